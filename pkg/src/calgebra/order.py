"""The natural order a <= b iff a or b = b, atoms, the commuting join, atomicity."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Optional, Sequence

from .algebra import FiniteCAlgebra
from .trit import F, TritVec, WidthError


def leq(a: TritVec, b: TritVec) -> bool:
    if a.width != b.width:
        raise WidthError(f"width mismatch: {a.width} vs {b.width}")
    return a | b == b


def _bottom(width: int) -> TritVec:
    return TritVec.const(width, F)


def atoms_relative(M: FiniteCAlgebra, A: Iterable[TritVec]) -> frozenset:
    """Atoms relative to ``A``: minimal elements of ``A`` strictly above F."""
    A = set(A)
    bot = _bottom(M.width)
    if bot not in A:
        raise ValueError("the relative set must contain F")
    out = set()
    for a in A:
        if a == bot:
            continue
        if not any(b != a and b != bot and leq(b, a) for b in A):
            out.add(a)
    return frozenset(out)


def atoms(M: FiniteCAlgebra) -> frozenset:
    return atoms_relative(M, M.universe)


def atoms_3X(width: int) -> frozenset:
    """Vectors with exactly one non-F coordinate, that coordinate T or U."""
    full = (1 << width) - 1
    out = set()
    for x in range(width):
        rest = full & ~(1 << x)
        out.add(TritVec(width, 1 << x, rest))
        out.add(TritVec(width, 0, rest))
    return frozenset(out)


def support(a: TritVec) -> int:
    """The unique coordinate where an atom of 3^X is not F."""
    nonf = a.full & ~a.f
    if nonf == 0 or nonf & (nonf - 1):
        raise ValueError(f"{a} is not an atom of 3^{a.width}")
    return nonf.bit_length() - 1


def join_all(elements: Sequence[TritVec]) -> TritVec:
    """Left-to-right join a1 or a2 or ... or aN."""
    return reduce(lambda x, y: x | y, elements)


def oplus(elements: Sequence[TritVec]) -> Optional[TritVec]:
    """Order-independent join of ``elements``, or ``None`` if the order matters.

    Defined exactly when no element is T at a coordinate where another is U;
    the result is then T on the union of T-sets, U on the union of U-sets,
    F elsewhere.
    """
    elements = list(elements)
    if not elements:
        raise ValueError("oplus of an empty list")
    width = elements[0].width
    if any(e.width != width for e in elements):
        raise WidthError("oplus operands differ in width")
    tmask = umask = 0
    for e in elements:
        tmask |= e.t
        umask |= e.u
    if tmask & umask:
        return None
    return TritVec(width, tmask, ~(tmask | umask) & ((1 << width) - 1))


def oplus_by_permutations(elements: Sequence[TritVec]) -> Optional[TritVec]:
    """Reference definition: join every ordering and compare.  Factorial cost."""
    elements = list(elements)
    first = join_all(elements)
    for perm in itertools.permutations(elements):
        if join_all(perm) != first:
            return None
    return first


def oplus_atoms_criterion(atom_list: Sequence[TritVec]) -> bool:
    """For atoms of the full 3^X: the join commutes iff their supports are distinct."""
    if not atom_list:
        raise ValueError("empty atom list")
    full_atoms = atoms_3X(atom_list[0].width)
    for a in atom_list:
        if a not in full_atoms:
            raise ValueError(f"{a} is not an atom of 3^{a.width}")
    sup = [support(a) for a in atom_list]
    return len(set(sup)) == len(sup)


def left_zeros(M: FiniteCAlgebra | Iterable[TritVec]) -> frozenset:
    """Elements a with a and F = a (equivalently a and b = a for every b)."""
    out = set()
    for a in M:
        if a & _bottom(a.width) == a:
            out.add(a)
    return frozenset(out)


def min_atom_below(M: FiniteCAlgebra, a: TritVec) -> TritVec:
    if a == M.F:
        raise ValueError("F has no atom below it")
    if a not in M:
        raise ValueError(f"{a} is not in the algebra")
    below = sorted(b for b in atoms(M) if leq(b, a))
    if not below:
        raise AssertionError(f"no atom below {a} in a finite algebra")
    return below[0]


# -- atomicity ---------------------------------------------------------------

@dataclass
class AtomicityReport:
    atomic: bool
    decomposition: dict[TritVec, tuple[TritVec, ...]] = field(default_factory=dict)
    obstruction: Optional[TritVec] = None
    counts: dict[TritVec, int] = field(default_factory=dict)

    def lines(self) -> list[str]:
        head = f"atomic: {str(self.atomic).lower()}"
        if self.obstruction is not None:
            head += f", obstruction: {self.obstruction}"
        out = [head]
        for a, parts in sorted(self.decomposition.items()):
            line = f"{a} = " + " (+) ".join(map(str, parts))
            if a in self.counts:
                line += f"  [{self.counts[a]} decomposition(s)]"
            out.append(line)
        return out


def decompositions(a: TritVec, candidates: Sequence[TritVec], first_only: bool = False) -> list[tuple[TritVec, ...]]:
    """Sets of ``candidates`` whose commuting join is ``a``.

    Depth-first over candidates in canonical order.  A branch is cut as soon
    as its T-set or U-set leaves the corresponding set of ``a``, or the two
    overlap (then no extension commutes either).
    """
    found: list[tuple[TritVec, ...]] = []
    cands = [c for c in sorted(candidates) if not (c.t & ~a.t) and not (c.u & ~a.u)]

    def dfs(start: int, chosen: list, tmask: int, umask: int) -> bool:
        if chosen and tmask == a.t and umask == a.u:
            found.append(tuple(chosen))
            if first_only:
                return True
        for k in range(start, len(cands)):
            c = cands[k]
            nt, nu = tmask | c.t, umask | c.u
            if nt & nu:
                continue
            chosen.append(c)
            if dfs(k + 1, chosen, nt, nu):
                return True
            chosen.pop()
        return False

    dfs(0, [], 0, 0)
    return found


def is_atomic(M: FiniteCAlgebra, count: bool = False) -> AtomicityReport:
    """Try to write every non-F element as a commuting join of atoms below it.

    With ``count=True`` the report also records how many atom sets work for
    each element; uniqueness is not assumed.
    """
    ats = atoms(M)
    report = AtomicityReport(atomic=True)
    for a in M:
        if a == M.F:
            continue
        below = [b for b in ats if leq(b, a)]
        found = decompositions(a, below, first_only=not count)
        if not found:
            report.atomic = False
            report.obstruction = a
            report.decomposition.clear()
            report.counts.clear()
            return report
        report.decomposition[a] = found[0]
        if count:
            report.counts[a] = len(found)
    return report


def is_g_closed(M: FiniteCAlgebra) -> bool:
    return atoms(M) <= atoms_3X(M.width)
