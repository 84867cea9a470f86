"""Scalar McCarthy logic on {T, F, U} and packed vectors in 3^X.

A vector of width n is stored as two n-bit planes: ``t`` marks the
coordinates equal to T and ``f`` marks those equal to F.  Every other
coordinate is U.  Read as sets, ``(t, f)`` is exactly the pair of disjoint
subsets (alpha^-1(T), alpha^-1(F)), so the pairs-of-sets view costs nothing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

MAX_WIDTH = 64


class Trit(enum.IntEnum):
    # integer order is the canonical order T < F < U
    T = 0
    F = 1
    U = 2

    def __invert__(self) -> "Trit":
        return trit_not(self)

    def __and__(self, other: "Trit") -> "Trit":
        return trit_and(self, other)

    def __or__(self, other: "Trit") -> "Trit":
        return trit_or(self, other)

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, ch: str) -> "Trit":
        try:
            return cls[ch.upper()]
        except KeyError:
            raise ValueError(f"not a truth value: {ch!r}") from None


T, F, U = Trit.T, Trit.F, Trit.U

_NOT = (F, T, U)
# rows: left operand, columns: right operand
_AND = (
    (T, F, U),
    (F, F, F),
    (U, U, U),
)
_OR = (
    (T, T, T),
    (T, F, U),
    (U, U, U),
)


def trit_not(a: Trit) -> Trit:
    return _NOT[a]


def trit_and(a: Trit, b: Trit) -> Trit:
    return _AND[a][b]


def trit_or(a: Trit, b: Trit) -> Trit:
    return _OR[a][b]


def trit_down(a: Trit) -> Trit:
    """Halting oracle: T stays T, F and U both go to F."""
    return T if a is T else F


class WidthError(ValueError):
    """Operands of different widths, or a width outside 1..64."""


class PairError(ValueError):
    """A pair (A, B) that is not a disjoint pair of subsets of X."""


def _check_width(width: int) -> None:
    if not 1 <= width <= MAX_WIDTH:
        raise WidthError(f"width must be in 1..{MAX_WIDTH}, got {width}")


@dataclass(frozen=True, slots=True)
class TritVec:
    width: int
    t: int
    f: int

    def __post_init__(self):
        _check_width(self.width)
        full = (1 << self.width) - 1
        if self.t & self.f:
            raise PairError(f"T and F planes overlap: {self.t:#x} & {self.f:#x}")
        if (self.t | self.f) & ~full:
            raise PairError("plane bits set beyond the vector width")

    # -- construction -----------------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "TritVec":
        text = text.strip()
        if not text:
            raise ValueError("empty element literal")
        t = f = 0
        for i, ch in enumerate(text):
            v = Trit.parse(ch)
            if v is T:
                t |= 1 << i
            elif v is F:
                f |= 1 << i
        return cls(len(text), t, f)

    @classmethod
    def from_trits(cls, trits: Iterable[Trit]) -> "TritVec":
        return cls.parse("".join(Trit(v).name for v in trits))

    @classmethod
    def const(cls, width: int, value: Trit) -> "TritVec":
        full = (1 << width) - 1
        if value is T:
            return cls(width, full, 0)
        if value is F:
            return cls(width, 0, full)
        return cls(width, 0, 0)

    @classmethod
    def from_index(cls, width: int, index: int) -> "TritVec":
        """Inverse of :attr:`index`."""
        t = f = 0
        for i in range(width - 1, -1, -1):
            index, d = divmod(index, 3)
            if d == 0:
                t |= 1 << i
            elif d == 1:
                f |= 1 << i
        return cls(width, t, f)

    # -- views ------------------------------------------------------------
    @property
    def full(self) -> int:
        return (1 << self.width) - 1

    @property
    def u(self) -> int:
        """Bitmask of the U coordinates."""
        return self.full & ~(self.t | self.f)

    def __getitem__(self, i: int) -> Trit:
        if not 0 <= i < self.width:
            raise IndexError(i)
        if self.t >> i & 1:
            return T
        if self.f >> i & 1:
            return F
        return U

    def __iter__(self):
        return (self[i] for i in range(self.width))

    def __len__(self) -> int:
        return self.width

    def __str__(self) -> str:
        return "".join(v.name for v in self)

    def __repr__(self) -> str:
        return f"TritVec({str(self)!r})"

    @property
    def index(self) -> int:
        """Position in the canonical enumeration of 3^width (coordinate 0 most significant)."""
        n = 0
        for v in self:
            n = 3 * n + int(v)
        return n

    def __lt__(self, other: "TritVec") -> bool:
        return (self.width, self.index) < (other.width, other.index)

    def is_boolean(self) -> bool:
        return self.u == 0

    # -- operations -------------------------------------------------------
    def _same(self, other: "TritVec") -> None:
        if self.width != other.width:
            raise WidthError(f"width mismatch: {self.width} vs {other.width}")

    def __invert__(self) -> "TritVec":
        return TritVec(self.width, self.f, self.t)

    def __and__(self, other: "TritVec") -> "TritVec":
        self._same(other)
        return TritVec(self.width, self.t & other.t, self.f | (self.t & other.f))

    def __or__(self, other: "TritVec") -> "TritVec":
        self._same(other)
        return TritVec(self.width, self.t | (self.f & other.t), self.f & other.f)

    def down(self) -> "TritVec":
        return TritVec(self.width, self.t, self.full & ~self.t)


def vec_not(a: TritVec) -> TritVec:
    return ~a


def vec_and(a: TritVec, b: TritVec) -> TritVec:
    return a & b


def vec_or(a: TritVec, b: TritVec) -> TritVec:
    return a | b


def vec(text: str) -> TritVec:
    """Shorthand for :meth:`TritVec.parse`."""
    return TritVec.parse(text)


def all_vectors(width: int) -> list[TritVec]:
    """Every element of 3^width in canonical order."""
    _check_width(width)
    return [TritVec.from_index(width, i) for i in range(3 ** width)]


def boolean_vectors(width: int) -> list[TritVec]:
    """The elements of 2^width, i.e. vectors without a U coordinate."""
    full = (1 << width) - 1
    return sorted(TritVec(width, m, full & ~m) for m in range(1 << width))


# -- pairs of sets ---------------------------------------------------------

Pair = tuple[frozenset, frozenset]


def _bits(mask: int) -> frozenset:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def _mask(indices: Iterable[int], width: int) -> int:
    m = 0
    for i in indices:
        if not 0 <= i < width:
            raise PairError(f"index {i} outside X = {{0..{width - 1}}}")
        m |= 1 << i
    return m


def to_pairs(a: TritVec) -> Pair:
    return _bits(a.t), _bits(a.f)


def from_pairs(width: int, A: Iterable[int], B: Iterable[int]) -> TritVec:
    _check_width(width)
    a, b = _mask(A, width), _mask(B, width)
    if a & b:
        raise PairError(f"sets are not disjoint: {sorted(_bits(a & b))}")
    return TritVec(width, a, b)


def _check_pair(p: Pair, X: frozenset) -> None:
    A, B = p
    if A & B:
        raise PairError(f"sets are not disjoint: {sorted(A & B)}")
    if not (A | B) <= X:
        raise PairError(f"sets escape X: {sorted((A | B) - X)}")


def pairs_not(p: Pair) -> Pair:
    A1, A2 = p
    return frozenset(A2), frozenset(A1)


def pairs_and(p: Pair, q: Pair, X: Iterable[int] | None = None) -> Pair:
    if X is not None:
        X = frozenset(X)
        _check_pair(p, X)
        _check_pair(q, X)
    (A1, A2), (B1, B2) = p, q
    return frozenset(A1 & B1), frozenset(A2 | (A1 & B2))


def pairs_or(p: Pair, q: Pair, X: Iterable[int] | None = None) -> Pair:
    if X is not None:
        X = frozenset(X)
        _check_pair(p, X)
        _check_pair(q, X)
    (A1, A2), (B1, B2) = p, q
    return frozenset(A1 | (A2 & B1)), frozenset(A2 & B2)
