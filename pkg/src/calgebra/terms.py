"""Terms over not/and/or (and down), and a semantic decision procedure.

Identities and quasi-identities are decided by sweeping every valuation in
3: the variety of C-algebras is generated by 3, and so is the variety of
adas.  Valuations are visited in mixed-radix order, variable 0 most
significant, T < F < U, so the reported counterexample is deterministic.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .trit import Trit, TritVec, trit_down

MODES = ("c", "ada")


class TermError(ValueError):
    """Malformed term literal, missing variable, or down used in c mode."""


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return f"(var {self.index})"


@dataclass(frozen=True)
class Const:
    value: Trit

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Not:
    child: "Term"

    def __str__(self):
        return f"(not {self.child})"


@dataclass(frozen=True)
class And:
    left: "Term"
    right: "Term"

    def __str__(self):
        return f"(and {self.left} {self.right})"


@dataclass(frozen=True)
class Or:
    left: "Term"
    right: "Term"

    def __str__(self):
        return f"(or {self.left} {self.right})"


@dataclass(frozen=True)
class Down:
    child: "Term"

    def __str__(self):
        return f"(down {self.child})"


Term = Union[Var, Const, Not, And, Or, Down]
Value = Union[Trit, TritVec]


def ite(a: Term, b: Term, c: Term) -> Term:
    """The term (a and b) or (not a and c)."""
    return Or(And(a, b), And(Not(a), c))


def children(t: Term) -> tuple:
    if isinstance(t, (Not, Down)):
        return (t.child,)
    if isinstance(t, (And, Or)):
        return (t.left, t.right)
    return ()


def variables(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    out: set[int] = set()
    for c in children(t):
        out |= variables(c)
    return out


def uses_down(t: Term) -> bool:
    return isinstance(t, Down) or any(uses_down(c) for c in children(t))


def depth(t: Term) -> int:
    return 1 + max((depth(c) for c in children(t)), default=0)


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")
_ARITY = {"not": 1, "down": 1, "and": 2, "or": 2}


def _tokens(text: str) -> list[tuple[int, str]]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:  # pragma: no cover - the pattern matches any non-space run
            raise TermError(f"unexpected input at column {pos + 1}")
        out.append((m.start(m.lastindex), m.group(m.lastindex)))
        pos = m.end()
    return out


def parse_term(text: str) -> Term:
    """Parse a prefix s-expression such as ``(or (var 0) (not (var 1)))``.

    Constants are written ``T``, ``F``, ``U`` or ``(const T)``.
    """
    toks = _tokens(text)
    if not toks:
        raise TermError("empty term")
    pos = 0

    def expect(what: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(toks):
            raise TermError(f"unexpected end of term, expected {what}")
        tok = toks[pos]
        pos += 1
        return tok

    def node() -> Term:
        col, tok = expect("a term")
        if tok == ")":
            raise TermError(f"unexpected ')' at column {col + 1}")
        if tok != "(":
            if tok.upper() in ("T", "F", "U"):
                return Const(Trit.parse(tok))
            raise TermError(f"unknown atom {tok!r} at column {col + 1}")
        col, head = expect("an operator")
        head = head.lower()
        if head == "var":
            c, n = expect("a variable index")
            if not n.isdigit():
                raise TermError(f"variable index must be a natural number, got {n!r} at column {c + 1}")
            out: Term = Var(int(n))
        elif head == "const":
            c, v = expect("T, F or U")
            try:
                out = Const(Trit.parse(v))
            except ValueError:
                raise TermError(f"bad constant {v!r} at column {c + 1}") from None
        elif head in _ARITY:
            args = [node() for _ in range(_ARITY[head])]
            out = {"not": Not, "down": Down, "and": And, "or": Or}[head](*args)
        else:
            raise TermError(f"unknown operator {head!r} at column {col + 1}")
        c, close = expect("')'")
        if close != ")":
            raise TermError(f"expected ')' at column {c + 1}, got {close!r}")
        return out

    t = node()
    if pos != len(toks):
        raise TermError(f"trailing input at column {toks[pos][0] + 1}")
    return t


# -- evaluation ---------------------------------------------------------------

def eval_term(t: Term, valuation: Mapping[int, Value] | Sequence[Value], width: Optional[int] = None) -> Value:
    """Evaluate bottom-up.  Values are Trits, or TritVecs of one width.

    Constants become vectors when ``width`` is given.
    """
    if not isinstance(valuation, Mapping):
        valuation = dict(enumerate(valuation))
    if width is None:
        width = next((v.width for v in valuation.values() if isinstance(v, TritVec)), None)

    def go(t: Term) -> Value:
        if isinstance(t, Var):
            try:
                return valuation[t.index]
            except KeyError:
                raise TermError(f"no value for variable {t.index}") from None
        if isinstance(t, Const):
            return t.value if width is None else TritVec.const(width, t.value)
        if isinstance(t, Not):
            return ~go(t.child)
        if isinstance(t, And):
            return go(t.left) & go(t.right)
        if isinstance(t, Or):
            return go(t.left) | go(t.right)
        if isinstance(t, Down):
            v = go(t.child)
            return v.down() if isinstance(v, TritVec) else trit_down(v)
        raise TypeError(f"not a term: {t!r}")

    return go(t)


# -- decision -------------------------------------------------------------------

@dataclass
class Decision:
    valid: bool
    counterexample: Optional[tuple[Trit, ...]] = None

    def __bool__(self) -> bool:
        return self.valid

    def lines(self) -> list[str]:
        out = [f"valid: {str(self.valid).lower()}"]
        if self.counterexample is not None:
            out.append("counterexample: (" + ", ".join(map(str, self.counterexample)) + ")")
        return out


Equation = tuple[Term, Term]


def _check_mode(mode: str, terms: Sequence[Term]) -> None:
    if mode not in MODES:
        raise TermError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == "c" and any(uses_down(t) for t in terms):
        raise TermError("down is only available in ada mode")


def _arity(terms: Sequence[Term]) -> int:
    return max((max(variables(t), default=-1) for t in terms), default=-1) + 1


def valuations(k: int):
    """All of 3^k in mixed-radix order, variable 0 most significant."""
    return itertools.product(Trit, repeat=k)


def decide_quasi_identity(premises: Sequence[Equation], conclusion: Equation, mode: str = "c") -> Decision:
    terms = [t for eq in premises for t in eq] + list(conclusion)
    _check_mode(mode, terms)
    lhs, rhs = conclusion
    for val in valuations(_arity(terms)):
        if all(eval_term(p, val) == eval_term(q, val) for p, q in premises):
            if eval_term(lhs, val) != eval_term(rhs, val):
                return Decision(False, tuple(val))
    return Decision(True)


def decide_identity(lhs: Term, rhs: Term, mode: str = "c") -> Decision:
    return decide_quasi_identity([], (lhs, rhs), mode)


def holds_in_power(lhs: Term, rhs: Term, width: int) -> bool:
    """Direct check of an identity over every tuple of elements of 3^width."""
    from .trit import all_vectors

    k = _arity([lhs, rhs])
    elems = all_vectors(width)
    return all(eval_term(lhs, val, width) == eval_term(rhs, val, width) for val in itertools.product(elems, repeat=k))


# -- axioms as terms ----------------------------------------------------------

_a, _b, _c = Var(0), Var(1), Var(2)
_T, _F, _U = Const(Trit.T), Const(Trit.F), Const(Trit.U)

C_AXIOMS: dict[str, Equation] = {
    "C1": (Not(Not(_a)), _a),
    "C2": (Not(And(_a, _b)), Or(Not(_a), Not(_b))),
    "C3": (And(And(_a, _b), _c), And(_a, And(_b, _c))),
    "C4": (And(_a, Or(_b, _c)), Or(And(_a, _b), And(_a, _c))),
    "C5": (And(Or(_a, _b), _c), Or(And(_a, _c), And(And(Not(_a), _b), _c))),
    "C6": (Or(_a, And(_a, _b)), _a),
    "C7": (Or(And(_a, _b), And(_b, _a)), Or(And(_b, _a), And(_a, _b))),
}

ADA_AXIOMS: dict[str, Equation] = {
    "A1": (Down(_F), _F),
    "A2": (Down(_U), _F),
    "A3": (Down(_T), _T),
    "A4": (And(_a, Down(_b)), And(_a, Down(And(_a, _b)))),
    "A5": (Or(Down(_a), Not(Down(_a))), _T),
    "A6": (_a, Or(Down(_a), _a)),
}


# -- random terms -----------------------------------------------------------------

def random_term(rng: np.random.Generator, n_vars: int, max_depth: int, ada: bool = False) -> Term:
    if max_depth <= 1 or rng.random() < 0.25:
        if rng.random() < 0.8:
            return Var(int(rng.integers(n_vars)))
        return Const(Trit(int(rng.integers(3))))
    ops = ["not", "and", "or"] + (["down"] if ada else [])
    op = ops[int(rng.integers(len(ops)))]
    sub = lambda: random_term(rng, n_vars, max_depth - 1, ada)
    if op == "not":
        return Not(sub())
    if op == "down":
        return Down(sub())
    return (And if op == "and" else Or)(sub(), sub())


def _equivalent_variant(t: Term, rng: np.random.Generator, n_vars: int) -> Term:
    """A term equal to ``t`` in every C-algebra, built from C1 and C6."""
    pick = int(rng.integers(3))
    if pick == 0:
        return Not(Not(t))
    if pick == 1:
        return Or(t, And(t, Var(int(rng.integers(n_vars)))))
    return And(t, Or(_T, t))


def term_corpus(n: int, seed: int = 0, n_vars: int = 2, max_depth: int = 4) -> list[Equation]:
    """Term pairs of depth at most ``max_depth``.

    Odd entries are two independent random terms; even entries pair a random
    term with a variant equal to it by construction, so both verdicts occur.
    """
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        if i % 2:
            lhs = random_term(rng, n_vars, max_depth)
            rhs = random_term(rng, n_vars, max_depth)
        else:
            lhs = random_term(rng, n_vars, max_depth - 2)
            rhs = _equivalent_variant(lhs, rng, n_vars)
        out.append((lhs, rhs))
    return out
