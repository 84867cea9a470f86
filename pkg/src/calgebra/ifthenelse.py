"""if-then-else actions, C-set axiom sweeps, annihilators and their closed sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .algebra import FiniteCAlgebra, InvariantError, Tables, constants, elem_planes, m_hash, tables
from .trit import TritVec, WidthError, all_vectors, boolean_vectors

CLOSED_SET_BRUTE_FORCE_MAX = 12


def ite(alpha: TritVec, beta: TritVec, gamma: TritVec) -> TritVec:
    """alpha[beta, gamma] = (alpha and beta) or (not alpha and gamma)."""
    if not alpha.width == beta.width == gamma.width:
        raise WidthError("ite operands differ in width")
    return (alpha & beta) | (~alpha & gamma)


# -- C-sets ------------------------------------------------------------------

@dataclass(frozen=True)
class PointedMap:
    """A map on X_bot = {bot, 0, ..., width-1} fixing bot.

    ``table[0]`` is the image of bot and ``table[x + 1]`` the image of
    coordinate ``x``; points are encoded the same way (0 is bot).
    """

    table: tuple[int, ...]

    def __post_init__(self):
        n = len(self.table)
        if n < 2:
            raise ValueError("a pointed map needs at least one non-base point")
        if self.table[0] != 0:
            raise ValueError(f"pointed map must fix the base point, got f(bot) = {self.table[0]}")
        if any(not 0 <= v < n for v in self.table):
            raise ValueError(f"values must lie in 0..{n - 1}")

    @property
    def width(self) -> int:
        return len(self.table) - 1

    def __call__(self, p: int) -> int:
        return self.table[p]

    def __str__(self) -> str:
        names = ["_"] + [str(i) for i in range(self.width)]
        return "[" + " ".join(names[v] for v in self.table[1:]) + "]"

    @classmethod
    def all(cls, width: int) -> list["PointedMap"]:
        return [cls((0,) + rest) for rest in itertools.product(range(width + 1), repeat=width)]


def functional_action(alpha: TritVec, f: PointedMap, g: PointedMap) -> PointedMap:
    """Pointwise branch: f where alpha is T, g where F, bot where U."""
    if not alpha.width == f.width == g.width:
        raise WidthError("alpha and the maps must share the index set")
    out = [0]
    for x in range(alpha.width):
        if alpha.t >> x & 1:
            out.append(f(x + 1))
        elif alpha.f >> x & 1:
            out.append(g(x + 1))
        else:
            out.append(0)
    return PointedMap(tuple(out))


@dataclass
class CSetModel:
    """A finite C-set given by tables.

    ``act[a, s, t]`` is the state ``a[s, t]``; algebra elements and states
    are addressed by position in ``algebra.universe`` and ``states``.
    """

    algebra: Tables
    states: Sequence
    act: np.ndarray
    base: int


def algebraic_model(M: FiniteCAlgebra) -> CSetModel:
    """(M, M) with base point U and the built-in action."""
    tb = tables(M.universe)
    N, A, O = tb.neg, tb.meet, tb.join
    a, s, t = np.indices((len(M),) * 3)
    act = O[A[a, s], A[N[a], t]]
    return CSetModel(tb, tb.universe, act, tb.pos(M.U))


def functional_model(width: int) -> CSetModel:
    """(T_o(X_bot), 3^X) with the pointwise branching action."""
    M = FiniteCAlgebra.full(width)
    tb = tables(M.universe)
    maps = PointedMap.all(width)
    where = {m: i for i, m in enumerate(maps)}
    act = np.empty((len(M), len(maps), len(maps)), dtype=np.int64)
    for i, alpha in enumerate(tb.universe):
        for j, f in enumerate(maps):
            for k, g in enumerate(maps):
                act[i, j, k] = where[functional_action(alpha, f, g)]
    return CSetModel(tb, maps, act, where[PointedMap((0,) * (width + 1))])


def _cset_axioms(model: CSetModel) -> dict[str, tuple[int, int, Callable]]:
    """name -> (number of algebra variables, number of state variables, check)."""
    tb, act, bot = model.algebra, model.act, model.base
    N, A = tb.neg, tb.meet
    Tp, Fp, Up = (tb.pos(c) for c in constants(tb.universe[0].width))

    def ec8(a, b, s, t):
        premise = act[a, s, t] == act[a, t, t]
        ab = A[a, b]
        return ~premise | (act[ab, s, t] == act[ab, t, t])

    return {
        "EC1": (0, 2, lambda s, t: act[Up, s, t] == bot),
        "EC2": (2, 4, lambda a, b, s, t, u, v: act[a, act[b, s, t], act[b, u, v]] == act[b, act[a, s, u], act[a, t, v]]),
        "EC3": (1, 3, lambda a, s, t, u: act[a, act[a, s, t], u] == act[a, s, u]),
        "EC4": (1, 3, lambda a, s, t, u: act[a, s, act[a, t, u]] == act[a, s, u]),
        "EC5": (1, 2, lambda a, s, t: act[N[a], s, t] == act[a, t, s]),
        "EC6": (0, 2, lambda s, t: act[Fp, s, t] == t),
        "EC7": (2, 2, lambda a, b, s, t: act[A[a, b], s, t] == act[a, act[b, s, t], t]),
        "EC8": (2, 2, ec8),
    }


@dataclass
class CSetReport:
    counterexamples: dict[str, Optional[tuple]]
    tuples_checked: dict[str, int] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(c is None for c in self.counterexamples.values())

    def failed(self) -> list[str]:
        return [k for k, c in self.counterexamples.items() if c is not None]

    def lines(self) -> list[str]:
        out = []
        for name, c in self.counterexamples.items():
            n = self.tuples_checked.get(name)
            tail = f" ({n} tuples)" if n is not None else ""
            if c is None:
                out.append(f"{name}: holds{tail}")
            else:
                out.append(f"{name}: FAILS at ({', '.join(map(str, c))}){tail}")
        return out


def verify_cset(model: CSetModel, sample: int | None = None, seed: int = 0) -> CSetReport:
    """Check EC1-EC8 exhaustively, or on ``sample`` uniformly drawn tuples per axiom.

    EC8 is a quasi-identity: tuples failing its premise count as passing.
    """
    rng = np.random.default_rng(seed)
    na, ns = len(model.algebra.universe), len(model.states)
    result, checked = {}, {}
    for name, (ka, ks, check) in _cset_axioms(model).items():
        sizes = (na,) * ka + (ns,) * ks
        if sample is None:
            grid = np.indices(sizes).reshape(len(sizes), -1)
        else:
            grid = np.stack([rng.integers(0, n, size=sample) for n in sizes])
        ok = check(*grid)
        bad = np.flatnonzero(~ok)
        checked[name] = grid.shape[1]
        if bad.size == 0:
            result[name] = None
        else:
            col = grid[:, bad[0]]
            labels = [model.algebra.universe[i] for i in col[:ka]] + [model.states[i] for i in col[ka:]]
            result[name] = tuple(labels)
    return CSetReport(result, checked)


def verify_cset_axioms_algebraic(M: FiniteCAlgebra) -> CSetReport:
    return verify_cset(algebraic_model(M))


def verify_cset_axioms_functional(width: int, sample: int | None = None, seed: int = 0) -> CSetReport:
    return verify_cset(functional_model(width), sample=sample, seed=seed)


# -- annihilators ---------------------------------------------------------------

@lru_cache(maxsize=64)
def _ann_masks(M: FiniteCAlgebra) -> tuple[int, ...]:
    """For each position j, the bitmask of positions i with universe[i][[a_j, a_j]] = U."""
    t, f = elem_planes(M.universe)
    full = np.uint64((1 << M.width) - 1)
    # planes of ite(alpha_i, a_j, a_j) for all i, j
    at, af = t[:, None], f[:, None]
    bt, bf = t[None, :], f[None, :]
    lt, lf = at & bt, af | (at & bf)            # alpha and a
    rt, rf = af & bt, at | (af & bf)            # not alpha and a
    rest_t, rest_f = lt | (lf & rt), lf & rf    # left or right
    is_u = (rest_t | rest_f) & full == 0
    masks = []
    for j in range(len(M)):
        m = 0
        for i in np.flatnonzero(is_u[:, j]):
            m |= 1 << int(i)
        masks.append(m)
    return tuple(masks)


def _to_mask(M: FiniteCAlgebra, S: Iterable[TritVec]) -> int:
    pos = {a: i for i, a in enumerate(M.universe)}
    m = 0
    for a in S:
        if a not in pos:
            raise ValueError(f"{a} is not an element of the algebra")
        m |= 1 << pos[a]
    return m


def _from_mask(M: FiniteCAlgebra, m: int) -> frozenset:
    return frozenset(a for i, a in enumerate(M.universe) if m >> i & 1)


def _ann_of_mask(masks: tuple[int, ...], m: int, n: int) -> int:
    out = (1 << n) - 1
    j = 0
    while m:
        if m & 1:
            out &= masks[j]
        m >>= 1
        j += 1
    return out


def ann_elem(M: FiniteCAlgebra, a: TritVec) -> frozenset:
    if a not in M:
        raise ValueError(f"{a} is not an element of the algebra")
    U = M.U
    return frozenset(alpha for alpha in M if ite(alpha, a, a) == U)


def ann_set(M: FiniteCAlgebra, S: Iterable[TritVec]) -> frozenset:
    """Intersection of ann_elem over S; the whole algebra for empty S."""
    masks = _ann_masks(M)
    return _from_mask(M, _ann_of_mask(masks, _to_mask(M, S), len(M)))


def ann2(M: FiniteCAlgebra, S: Iterable[TritVec]) -> frozenset:
    return ann_set(M, ann_set(M, S))


def is_closed(M: FiniteCAlgebra, S: Iterable[TritVec]) -> bool:
    S = frozenset(S)
    return ann2(M, S) == S


def I_A(width: int, A: Iterable[int]) -> frozenset:
    """Elements of 3^width equal to U on every coordinate of A."""
    am = 0
    for x in A:
        am |= 1 << x
    return frozenset(a for a in all_vectors(width) if not (a.t | a.f) & am)


def subsets_of(width: int) -> list[frozenset]:
    return [frozenset(c) for r in range(width + 1) for c in itertools.combinations(range(width), r)]


def canonical(S: Iterable[TritVec]) -> tuple[TritVec, ...]:
    return tuple(sorted(S))


@dataclass
class ClosedSetFamily:
    algebra: FiniteCAlgebra
    members: list[frozenset]
    labels: dict[frozenset, frozenset] = field(default_factory=dict)  # I_A -> A, full 3^X only

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, S) -> bool:
        return frozenset(S) in set(self.members)

    def lines(self) -> list[str]:
        out = []
        for I in self.members:
            body = "{" + ", ".join(map(str, canonical(I))) + "}"
            if I in self.labels:
                A = "{" + ",".join(map(str, sorted(self.labels[I]))) + "}"
                out.append(f"I_{A} = {body}")
            else:
                out.append(body)
        return out


def _closed_brute_force(M: FiniteCAlgebra) -> list[frozenset]:
    masks = _ann_masks(M)
    n = len(M)
    out = []
    for m in range(1 << n):
        if _ann_of_mask(masks, _ann_of_mask(masks, m, n), n) == m:
            out.append(_from_mask(M, m))
    return out


def closed_sets(M: FiniteCAlgebra, bound: int = CLOSED_SET_BRUTE_FORCE_MAX) -> ClosedSetFamily:
    """All S with Ann(Ann(S)) = S, ordered by size then canonical contents.

    For the full 3^n the family {I_A : A subset of X} is built directly and
    each member is checked against the fixpoint definition; below the brute
    force bound the whole family is cross-checked too.  Proper subalgebras
    are brute-forced over all 2^|M| subsets.
    """
    key = lambda S: (len(S), [a.index for a in canonical(S)])
    if M.is_full():
        labels = {I_A(M.width, A): A for A in subsets_of(M.width)}
        for I in labels:
            if not is_closed(M, I):
                raise InvariantError(f"I_A for A = {sorted(labels[I])} is not closed")
        if len(M) <= bound and set(_closed_brute_force(M)) != set(labels):
            raise InvariantError("closed sets of 3^X differ from {I_A}")
        return ClosedSetFamily(M, sorted(labels, key=key), labels)
    if len(M) > bound:
        raise ValueError(f"refusing to brute-force 2^{len(M)} subsets (bound is {bound} elements)")
    return ClosedSetFamily(M, sorted(_closed_brute_force(M), key=key))


@dataclass
class BooleanCheck:
    failures: list[str]
    isomorphism: Optional[bool] = None

    @property
    def holds(self) -> bool:
        return not self.failures and self.isomorphism is not False

    def lines(self) -> list[str]:
        out = [f"boolean algebra: {str(not self.failures).lower()}"]
        out.extend(f"  violated: {f}" for f in self.failures)
        if self.isomorphism is not None:
            out.append(f"I_A -> complement of A is an isomorphism onto 2^X: {str(self.isomorphism).lower()}")
        return out


def closed_boolean_ops(family: ClosedSetFamily) -> BooleanCheck:
    """Check the Boolean-algebra laws for not = Ann, meet = intersection, join = Ann(Ann & Ann)."""
    M = family.algebra
    members = list(family.members)
    known = set(members)
    zero, one = frozenset({M.U}), M.elements

    def neg(I):
        return ann_set(M, I)

    def meet(I, J):
        return I & J

    def join(I, J):
        return ann_set(M, ann_set(M, I) & ann_set(M, J))

    failures = []

    def law(name, ok):
        if not ok and name not in failures:
            failures.append(name)

    law("0 is closed", zero in known)
    law("1 is closed", one in known)
    for I in members:
        law("closed under not", neg(I) in known)
        law("double negation", neg(neg(I)) == I)
        law("identity for meet", meet(I, one) == I)
        law("identity for join", join(I, zero) == I)
        law("complement (meet)", meet(I, neg(I)) == zero)
        law("complement (join)", join(I, neg(I)) == one)
        for J in members:
            law("closed under meet", meet(I, J) in known)
            law("closed under join", join(I, J) in known)
            law("commutative meet", meet(I, J) == meet(J, I))
            law("commutative join", join(I, J) == join(J, I))
            law("absorption", meet(I, join(I, J)) == I and join(I, meet(I, J)) == I)
            for K in members:
                law("associative meet", meet(meet(I, J), K) == meet(I, meet(J, K)))
                law("associative join", join(join(I, J), K) == join(I, join(J, K)))
                law("distributive", meet(I, join(J, K)) == join(meet(I, J), meet(I, K)))

    iso = None
    if family.labels:
        X = frozenset(range(M.width))
        phi = {I: X - A for I, A in family.labels.items()}
        iso = len(set(phi.values())) == 2 ** M.width and all(
            phi[neg(I)] == X - phi[I]
            and all(phi[meet(I, J)] == phi[I] & phi[J] and phi[join(I, J)] == phi[I] | phi[J] for J in members)
            for I in members
        )
        iso = iso and phi[zero] == frozenset() and phi[one] == X
    return BooleanCheck(failures, iso)


def satisfies_p1_p2(I: Iterable[TritVec], width: int) -> bool:
    """Is there Y with every member U on Y and every pattern on the complement of Y realised?"""
    I = frozenset(I)
    for Y in subsets_of(width):
        ym = sum(1 << y for y in Y)
        if any((a.t | a.f) & ym for a in I):
            continue
        rest = [x for x in range(width) if x not in Y]
        patterns = {tuple(a[x] for x in rest) for a in I}
        if len(patterns) == 3 ** len(rest):
            return True
    return False


def partition_by_annihilator(width: int, bound: int = 6) -> dict[frozenset, frozenset]:
    """S_A = {alpha : Ann(alpha) = I_A} for every A subset of X."""
    if width > bound:
        raise ValueError(f"refusing to partition 3^{width}: bound is {bound}")
    M = FiniteCAlgebra.full(width)
    by_set = {I_A(width, A): A for A in subsets_of(width)}
    classes: dict[frozenset, set] = {A: set() for A in by_set.values()}
    for alpha in M:
        ann = ann_set(M, [alpha])
        if ann not in by_set:
            raise InvariantError(f"Ann({alpha}) is not of the form I_A")
        classes[by_set[ann]].add(alpha)
    out = {A: frozenset(S) for A, S in classes.items()}
    if any(not S for S in out.values()):
        raise InvariantError("empty annihilator class")
    if out[frozenset(range(width))] != frozenset(boolean_vectors(width)):
        raise InvariantError("S_X differs from 2^X")
    return out
