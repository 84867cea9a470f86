"""The halting oracle ``down``, ada detection and closure, and related constructions.

Everything here is computed inside a fixed ambient 3^n.  In particular the
"enveloping ada" of a subalgebra is taken to be its closure under ``down``
within that ambient power, not an abstract free object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .algebra import (
    AxiomReport,
    FiniteCAlgebra,
    closure_witness,
    constants,
    m_hash,
    verify_ada_axioms,
)
from .order import atoms
from .trit import TritVec, WidthError


def downarrow(a: TritVec) -> TritVec:
    return a.down()


class FiniteAda(FiniteCAlgebra):
    """A subalgebra of 3^n that is also closed under ``down``."""

    def __post_init__(self):
        super().__post_init__()
        for a in self.universe:
            if a.down() not in self.elements:
                raise ValueError(f"not closed under down: {a}^down = {a.down()}")

    @classmethod
    def of(cls, M: FiniteCAlgebra) -> "FiniteAda":
        return cls(M.width, M.universe)

    def down_table(self) -> dict[TritVec, TritVec]:
        return {a: a.down() for a in self.universe}


def is_down_closed(M: FiniteCAlgebra) -> bool:
    return all(a.down() in M for a in M)


@dataclass
class AdaCheck:
    is_ada: bool
    missing: TritVec | None = None       # first a with a.down() outside M
    report: AxiomReport | None = None    # A1-A6, only when closed under down

    def lines(self) -> list[str]:
        out = [f"ada: {str(self.is_ada).lower()}"]
        if self.missing is not None:
            out.append(f"not closed under down: {self.missing}^down = {self.missing.down()}")
        if self.report is not None:
            out.extend(self.report.lines())
        return out


def check_ada(M: FiniteCAlgebra) -> AdaCheck:
    for a in M:
        if a.down() not in M:
            return AdaCheck(False, missing=a)
    report = verify_ada_axioms(M)
    return AdaCheck(report.holds, report=report)


def is_ada(M: FiniteCAlgebra) -> bool:
    return check_ada(M).is_ada


def ada_closure(M: FiniteCAlgebra | Iterable[TritVec], width: int | None = None) -> FiniteAda:
    """Smallest superset closed under not, and, or, down and containing the constants."""
    elems = list(M)
    if width is None:
        width = elems[0].width if elems else getattr(M, "width")
    seen = set(constants(width)) | set(elems)
    if any(a.width != width for a in seen):
        raise WidthError("mixed widths")
    done: list[TritVec] = []
    todo = list(seen)
    while todo:
        a = todo.pop()
        done.append(a)
        fresh = [~a, a.down()]
        for b in done:
            fresh.extend((a & b, b & a, a | b, b | a))
        for r in fresh:
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return FiniteAda(width, tuple(seen))


def down_image(M: FiniteCAlgebra) -> frozenset:
    """{a^down : a in M} for an ada M."""
    return frozenset(a.down() for a in M)


def down_fixed(M: FiniteCAlgebra) -> frozenset:
    return frozenset(a for a in M if a.down() == a)


def boolean_to_ada(Q: Iterable[TritVec]) -> FiniteAda:
    """Ada of all disjoint pairs (E, F) with E and F taken from the T-sets of ``Q``.

    ``Q`` must be a Boolean subalgebra of 2^n: U-free, containing T and F,
    closed under not and and.
    """
    Q = frozenset(Q)
    if not Q:
        raise ValueError("empty Boolean algebra")
    width = next(iter(Q)).width
    Tc, Fc, _ = constants(width)
    if any(not q.is_boolean() for q in Q):
        raise ValueError("Q contains an element with a U coordinate")
    if Tc not in Q or Fc not in Q:
        raise ValueError("Q must contain T and F")
    if closure_witness(Q) is not None:
        raise ValueError("Q is not closed under not/and/or")
    family = sorted({q.t for q in Q})
    star = {TritVec(width, e, f) for e in family for f in family if not e & f}
    M = FiniteCAlgebra.from_elements(width, star)
    if m_hash(M) != Q:
        raise AssertionError("Boolean part of Q* does not recover Q")
    return FiniteAda.of(M)


def atom_bijection_G(A: FiniteCAlgebra) -> dict[TritVec, TritVec]:
    """Map each non-Boolean atom a to not((not a)^down), a Boolean atom; checked bijective."""
    if not is_ada(A):
        raise ValueError("atom_bijection_G needs an ada")
    ats = atoms(A)
    boolean = m_hash(A)
    src = sorted(a for a in ats if a not in boolean)
    dst = {a for a in ats if a in boolean}
    G = {a: ~((~a).down()) for a in src}
    image = set(G.values())
    if len(image) != len(src):
        raise AssertionError("G is not injective")
    if image != dst:
        raise AssertionError("G does not map onto the Boolean atoms")
    return G
