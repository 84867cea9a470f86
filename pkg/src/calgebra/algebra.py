"""Finite C-algebras embedded in 3^n: generation, enumeration, axiom sweeps."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from . import kernels
from .trit import F, T, TritVec, U, WidthError, all_vectors

DEFAULT_ENUM_BOUND = 3


class ClosureError(ValueError):
    """A set of vectors that was expected to be closed is not."""


class InvariantError(AssertionError):
    """An internal invariant failed; indicates a bug, not bad input."""


def constants(width: int) -> tuple[TritVec, TritVec, TritVec]:
    return TritVec.const(width, T), TritVec.const(width, F), TritVec.const(width, U)


def closure_witness(elements: Iterable[TritVec]) -> Optional[tuple[str, tuple, TritVec]]:
    """First missing result ``(op, operands, result)``, or ``None`` if closed under not/and/or."""
    elems = sorted(set(elements))
    have = set(elems)
    for a in elems:
        if ~a not in have:
            return "not", (a,), ~a
    for a in elems:
        for b in elems:
            for op, r in (("and", a & b), ("or", a | b)):
                if r not in have:
                    return op, (a, b), r
    return None


@dataclass(frozen=True, eq=False)
class FiniteCAlgebra:
    """A subset of 3^width containing T, F, U and closed under not, and, or."""

    width: int
    universe: tuple[TritVec, ...]
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(sorted(set(self.universe))))
        object.__setattr__(self, "_members", frozenset(self.universe))

    @classmethod
    def from_elements(cls, width: int, elements: Iterable[TritVec], check: bool = True) -> "FiniteCAlgebra":
        elements = list(elements)
        for e in elements:
            if e.width != width:
                raise WidthError(f"element {e} has width {e.width}, expected {width}")
        if check:
            missing = [c for c in constants(width) if c not in set(elements)]
            if missing:
                raise ClosureError(f"constant {missing[0]} is missing")
            w = closure_witness(elements)
            if w is not None:
                op, args, r = w
                raise ClosureError(f"not closed: {op}({', '.join(map(str, args))}) = {r} is missing")
        return cls(width, tuple(elements))

    @classmethod
    def full(cls, width: int) -> "FiniteCAlgebra":
        return cls(width, tuple(all_vectors(width)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteCAlgebra):
            return NotImplemented
        return (self.width, self.universe) == (other.width, other.universe)

    def __hash__(self) -> int:
        return hash((self.width, self.universe))

    def __len__(self) -> int:
        return len(self.universe)

    def __iter__(self):
        return iter(self.universe)

    def __contains__(self, a) -> bool:
        return a in self._members

    @property
    def elements(self) -> frozenset:
        return self._members

    @property
    def T(self) -> TritVec:
        return TritVec.const(self.width, T)

    @property
    def F(self) -> TritVec:
        return TritVec.const(self.width, F)

    @property
    def U(self) -> TritVec:
        return TritVec.const(self.width, U)

    def is_full(self) -> bool:
        return len(self.universe) == 3 ** self.width

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.universe)) + "}"


def generate(width: int, generators: Iterable[TritVec] = ()) -> FiniteCAlgebra:
    """Subalgebra of 3^width generated by ``generators`` and the constants."""
    seen = set(constants(width))
    for g in generators:
        if g.width != width:
            raise WidthError(f"generator {g} has width {g.width}, expected {width}")
        seen.add(g)
    done: list[TritVec] = []
    todo = list(seen)
    while todo:
        a = todo.pop()
        done.append(a)
        fresh = [~a]
        for b in done:
            fresh.extend((a & b, b & a, a | b, b | a))
        for r in fresh:
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return FiniteCAlgebra(width, tuple(seen))


# -- enumeration -----------------------------------------------------------

def _sort_key(M: FiniteCAlgebra):
    return len(M), [e.index for e in M.universe]


def _from_mask(width: int, mask: np.ndarray) -> FiniteCAlgebra:
    return FiniteCAlgebra(width, tuple(TritVec.from_index(width, int(i)) for i in np.flatnonzero(mask)))


def enumerate_subalgebras(width: int, bound: int = DEFAULT_ENUM_BOUND) -> list[FiniteCAlgebra]:
    """All subalgebras of 3^width, ordered by size and then by universe.

    Walks the subalgebra lattice upwards from the one generated by the
    constants: every subalgebra is reached by adjoining one element at a
    time to a smaller one and closing.
    """
    if width > bound:
        raise ValueError(f"refusing to enumerate subalgebras of 3^{width}: bound is {bound}")
    tb = kernels.op_tables(width)
    n = 3 ** width
    seed = np.zeros(n, dtype=np.bool_)
    for c in constants(width):
        seed[c.index] = True
    bottom = kernels.closure(tb["neg"], tb["conj"], seed)
    found = {bottom.tobytes(): bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for S in frontier:
            for e in np.flatnonzero(~S):
                grown = S.copy()
                grown[e] = True
                C = kernels.closure(tb["neg"], tb["conj"], grown)
                key = C.tobytes()
                if key not in found:
                    found[key] = C
                    nxt.append(C)
        frontier = nxt
    return sorted((_from_mask(width, m) for m in found.values()), key=_sort_key)


def enumerate_subalgebras_bruteforce(width: int) -> list[FiniteCAlgebra]:
    """Same result as :func:`enumerate_subalgebras`, by testing every subset for closure.

    Independent of the lattice walk; feasible up to width 3 (2^24 subsets).
    """
    if width > 3:
        raise ValueError("brute-force sweep is limited to width <= 3")
    tb = kernels.op_tables(width)
    base = sorted(c.index for c in constants(width))
    free = [i for i in range(3 ** width) if i not in base]
    out = []
    for s in kernels.closed_subsets(tb["neg"], tb["conj"], base, free):
        chosen = list(base) + [free[k] for k in range(len(free)) if s >> k & 1]
        out.append(FiniteCAlgebra(width, tuple(TritVec.from_index(width, i) for i in chosen)))
    return sorted(out, key=_sort_key)


def permute(a: TritVec, perm: tuple[int, ...]) -> TritVec:
    """Vector whose coordinate ``perm[i]`` is coordinate ``i`` of ``a``."""
    t = f = 0
    for i, p in enumerate(perm):
        t |= (a.t >> i & 1) << p
        f |= (a.f >> i & 1) << p
    return TritVec(a.width, t, f)


def orbit_representatives(algebras: Iterable[FiniteCAlgebra]) -> list[FiniteCAlgebra]:
    """One algebra per orbit under permutation of coordinates (the least in canonical order)."""
    reps = {}
    for M in algebras:
        images = []
        for perm in itertools.permutations(range(M.width)):
            images.append(tuple(sorted(e.index for e in (permute(a, perm) for a in M))))
        key = min(images)
        reps.setdefault(key, FiniteCAlgebra(M.width, tuple(TritVec.from_index(M.width, i) for i in key)))
    return sorted(reps.values(), key=_sort_key)


# -- axiom sweeps ----------------------------------------------------------

@dataclass
class Tables:
    """Operation tables of a finite algebra over positions 0..n-1 of ``universe``."""

    universe: tuple[TritVec, ...]
    neg: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    down: Optional[np.ndarray] = None

    def pos(self, a: TritVec) -> int:
        return self.universe.index(a)


def _lookup(universe: tuple[TritVec, ...], t: np.ndarray, f: np.ndarray) -> np.ndarray:
    width = universe[0].width
    keys = np.array([a.t | (a.f << width) for a in universe], dtype=np.uint64)
    order = np.argsort(keys)
    want = (t | (f << np.uint64(width))).astype(np.uint64)
    at = np.searchsorted(keys[order], want)
    at = np.minimum(at, len(keys) - 1)
    hit = keys[order][at] == want
    if not hit.all():
        return np.where(hit, order[at], -1)
    return order[at]


def elem_planes(elements: Iterable[TritVec]) -> tuple[np.ndarray, np.ndarray]:
    elements = list(elements)
    return (np.array([a.t for a in elements], dtype=np.uint64),
            np.array([a.f for a in elements], dtype=np.uint64))


def tables(universe: Iterable[TritVec], with_down: bool = False) -> Tables:
    """Tables of the operations of 3^n restricted to ``universe``; raises if not closed."""
    universe = tuple(sorted(set(universe)))
    width = universe[0].width
    if width > 32:
        raise WidthError("operation tables need width <= 32")
    t, f = elem_planes(universe)
    a1, a2, b1, b2 = t[:, None], f[:, None], t[None, :], f[None, :]
    full = np.uint64((1 << width) - 1)
    neg = _lookup(universe, f, t)
    meet = _lookup(universe, a1 & b1, a2 | (a1 & b2))
    join = _lookup(universe, a1 | (a2 & b1), a2 & b2)
    down = _lookup(universe, t, full & ~t) if with_down else None
    for name, tab in (("not", neg), ("and", meet), ("or", join)):
        if (tab < 0).any():
            raise ClosureError(f"universe is not closed under {name}")
    if down is not None and (down < 0).any():
        raise ClosureError("universe is not closed under down")
    return Tables(universe, neg, meet, join, down)


Identity = Callable[..., tuple[np.ndarray, np.ndarray]]


def _c_axioms(tb: Tables) -> dict[str, tuple[int, Identity]]:
    N, A, O = tb.neg, tb.meet, tb.join
    return {
        "C1": (1, lambda a: (N[N[a]], a)),
        "C2": (2, lambda a, b: (N[A[a, b]], O[N[a], N[b]])),
        "C3": (3, lambda a, b, c: (A[A[a, b], c], A[a, A[b, c]])),
        "C4": (3, lambda a, b, c: (A[a, O[b, c]], O[A[a, b], A[a, c]])),
        "C5": (3, lambda a, b, c: (A[O[a, b], c], O[A[a, c], A[A[N[a], b], c]])),
        "C6": (2, lambda a, b: (O[a, A[a, b]], a)),
        "C7": (2, lambda a, b: (O[A[a, b], A[b, a]], O[A[b, a], A[a, b]])),
    }


def _ada_axioms(tb: Tables) -> dict[str, tuple[int, Identity]]:
    N, A, O, D = tb.neg, tb.meet, tb.join, tb.down
    Tp, Fp, Up = (tb.pos(c) for c in constants(tb.universe[0].width))
    return {
        "A1": (0, lambda: (D[Fp], Fp)),
        "A2": (0, lambda: (D[Up], Fp)),
        "A3": (0, lambda: (D[Tp], Tp)),
        "A4": (2, lambda a, b: (A[a, D[b]], A[a, D[A[a, b]]])),
        "A5": (1, lambda a: (O[D[a], N[D[a]]], np.full_like(a, Tp))),
        "A6": (1, lambda a: (a, O[D[a], a])),
    }


@dataclass
class AxiomReport:
    """Per-axiom outcome; a counterexample is the first failing tuple in canonical order."""

    counterexamples: dict[str, Optional[tuple[TritVec, ...]]]

    @property
    def holds(self) -> bool:
        return all(c is None for c in self.counterexamples.values())

    def failed(self) -> list[str]:
        return [k for k, c in self.counterexamples.items() if c is not None]

    def lines(self) -> list[str]:
        out = []
        for name, c in self.counterexamples.items():
            if c is None:
                out.append(f"{name}: holds")
            else:
                out.append(f"{name}: FAILS at ({', '.join(map(str, c))})")
        return out


def sweep_identities(universe: tuple, axioms: dict[str, tuple[int, Identity]]) -> AxiomReport:
    n = len(universe)
    result = {}
    for name, (arity, ident) in axioms.items():
        if arity == 0:
            lhs, rhs = ident()
            result[name] = None if lhs == rhs else ()
            continue
        grids = np.indices((n,) * arity).reshape(arity, -1)
        lhs, rhs = ident(*grids)
        bad = np.flatnonzero(lhs != rhs)
        result[name] = None if bad.size == 0 else tuple(universe[i] for i in grids[:, bad[0]])
    return AxiomReport(result)


def verify_c_axioms(M: FiniteCAlgebra | Tables, ada: bool = False) -> AxiomReport:
    """Check C1-C7 (and A1-A6 when ``ada``) over every tuple of the universe.

    Pass a :class:`Tables` directly to check arbitrary, possibly mutated,
    operation tables.
    """
    tb = M if isinstance(M, Tables) else tables(M.universe, with_down=ada)
    axioms = _c_axioms(tb)
    if ada:
        axioms.update(_ada_axioms(tb))
    return sweep_identities(tb.universe, axioms)


def verify_ada_axioms(M: FiniteCAlgebra | Tables) -> AxiomReport:
    tb = M if isinstance(M, Tables) else tables(M.universe, with_down=True)
    return sweep_identities(tb.universe, _ada_axioms(tb))


# -- Boolean part ----------------------------------------------------------

def m_hash(M: FiniteCAlgebra | Iterable[TritVec]) -> frozenset:
    """Elements with a or not-a equal to T: exactly the vectors without a U coordinate."""
    out = set()
    for a in M:
        if a | ~a == TritVec.const(a.width, T):
            out.add(a)
    return frozenset(out)


def m_hash_complement_algebra(M: FiniteCAlgebra) -> tuple[frozenset, FiniteCAlgebra]:
    """The complement of the Boolean part and its extension by T and F.

    The complement is closed under not, and, or on its own; the extension
    is a subalgebra containing all three constants.
    """
    comp = frozenset(M.elements - m_hash(M))
    w = closure_witness(comp)
    if w is not None:
        raise InvariantError(f"Boolean-part complement not closed: {w}")
    ext = comp | {M.T, M.F}
    w = closure_witness(ext)
    if w is not None:
        raise InvariantError(f"extended complement not closed: {w}")
    return comp, FiniteCAlgebra(M.width, tuple(ext))


# -- algebra files -----------------------------------------------------------

class AlgebraFileError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_algebra(text: str, close: bool = False) -> FiniteCAlgebra:
    """Read the ``width=<n>`` + one-literal-per-line format.

    With ``close=True`` the listed elements are treated as generators;
    otherwise the listed set must already be a subalgebra.
    """
    width = None
    elems: list[tuple[int, TritVec]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if width is None:
            key, sep, val = line.partition("=")
            if key.strip() != "width" or not sep:
                raise AlgebraFileError(lineno, f"expected 'width=<n>', got {line!r}")
            try:
                width = int(val)
            except ValueError:
                raise AlgebraFileError(lineno, f"bad width {val.strip()!r}") from None
            if not 1 <= width <= 64:
                raise AlgebraFileError(lineno, f"width {width} outside 1..64")
            continue
        try:
            a = TritVec.parse(line)
        except ValueError as exc:
            raise AlgebraFileError(lineno, f"bad element literal {line!r}: {exc}") from None
        if a.width != width:
            raise AlgebraFileError(lineno, f"element {line} has width {a.width}, expected {width}")
        elems.append((lineno, a))
    if width is None:
        raise AlgebraFileError(1, "missing 'width=<n>' header")
    if close:
        return generate(width, (a for _, a in elems))
    have = {a for _, a in elems}
    for c in constants(width):
        if c not in have:
            raise AlgebraFileError(len(text.splitlines()) or 1, f"constant {c} is missing")
    w = closure_witness(have)
    if w is not None:
        op, args, r = w
        where = min(ln for ln, a in elems if a in args)
        raise AlgebraFileError(where, f"universe not closed: {op}({', '.join(map(str, args))}) = {r} is missing")
    return FiniteCAlgebra(width, tuple(have))


def dump_algebra(M: FiniteCAlgebra, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"width={M.width}")
    lines.extend(str(a) for a in M)
    return "\n".join(lines) + "\n"


def read_algebra(path, close: bool = False) -> FiniteCAlgebra:
    with open(path) as fh:
        return parse_algebra(fh.read(), close=close)
