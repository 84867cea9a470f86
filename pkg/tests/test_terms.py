import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from calgebra import F, T, U, Trit, TritVec, all_vectors, decide_identity, decide_quasi_identity, eval_term, parse_term
from calgebra.terms import (
    ADA_AXIOMS,
    C_AXIOMS,
    And,
    Const,
    Down,
    Not,
    Or,
    TermError,
    Var,
    holds_in_power,
    ite,
    random_term,
    term_corpus,
    valuations,
)

a, b, c, d = Var(0), Var(1), Var(2), Var(3)


def test_eval_examples():
    assert eval_term(Or(a, b), {0: T, 1: U}) is T
    assert eval_term(Or(a, b), {0: U, 1: T}) is U
    assert eval_term(Down(Const(U)), {}) is F
    assert eval_term(And(a, Not(a)), {0: T}) is F


def test_eval_missing_variable():
    with pytest.raises(TermError):
        eval_term(And(a, b), {0: T})


def test_eval_on_vectors():
    x, y = TritVec.parse("TU"), TritVec.parse("UT")
    assert eval_term(And(a, b), [x, y]) == TritVec.parse("UU")
    assert eval_term(Or(a, Const(T)), [x]) == TritVec.parse("TU")
    assert eval_term(Down(a), [x]) == TritVec.parse("TF")


def test_parse_round_trip():
    for text in ["(or (var 0) (not (var 1)))", "(down (var 0))", "(and T (or U F))"]:
        assert str(parse_term(text)) == text
    assert parse_term("(const U)") == Const(U)
    assert parse_term("  ( OR (var 0)\n (var 1) ) ") == Or(a, b)


@pytest.mark.parametrize("bad", ["", "(", "(var)", "(var x)", "(foo (var 0))", "(not (var 0) (var 1))",
                                 "(var 0))", "X", ")", "(const Q)", "(and (var 0))"])
def test_parse_errors(bad):
    with pytest.raises(TermError):
        parse_term(bad)


def test_decide_examples():
    assert decide_identity(*C_AXIOMS["C5"])
    r = decide_identity(Or(a, b), Or(b, a))
    assert not r and r.counterexample == (T, U)
    assert decide_identity(And(a, Const(F)), And(a, Not(a)))
    assert r.lines() == ["valid: false", "counterexample: (T, U)"]


def test_all_axioms_decide_true():
    for name, (l, r) in C_AXIOMS.items():
        assert decide_identity(l, r), name
        assert decide_identity(l, r, mode="ada"), name
    for name, (l, r) in ADA_AXIOMS.items():
        assert decide_identity(l, r, mode="ada"), name


def test_down_rejected_in_c_mode():
    with pytest.raises(TermError):
        decide_identity(Down(a), a)
    with pytest.raises(TermError):
        decide_identity(a, a, mode="boolean")


def test_quasi_identities():
    # EC8 over the (M, M) action
    prem = (ite(a, c, d), ite(a, d, d))
    concl = (ite(And(a, b), c, d), ite(And(a, b), d, d))
    assert decide_quasi_identity([prem], concl)
    assert decide_quasi_identity([(a, Const(T))], (Or(a, b), Const(T)))
    assert decide_quasi_identity([(And(a, Const(F)), Const(F))], (Or(a, Not(a)), Const(T)))
    r = decide_quasi_identity([(a, Const(U))], (Or(a, b), b))
    assert not r and r.counterexample == (U, T)


def test_valuation_order():
    assert list(valuations(2))[:3] == [(T, T), (T, F), (T, U)]
    assert len(list(valuations(3))) == 27


def _first_counterexample_brute(l, r):
    k = 1 + max(max(_vars(l), default=-1), max(_vars(r), default=-1))
    for val in itertools.product([T, F, U], repeat=k):
        if eval_term(l, val) != eval_term(r, val):
            return val
    return None


def _vars(t):
    from calgebra.terms import variables
    return variables(t)


def test_corpus_agrees_with_power():
    corpus = term_corpus(20, seed=0)
    verdicts = set()
    for l, r in corpus:
        dec = decide_identity(l, r)
        assert dec.valid == holds_in_power(l, r, 2)
        verdicts.add(dec.valid)
    assert verdicts == {True, False}


@given(st.integers(0, 10_000))
def test_counterexamples_falsify(seed):
    import numpy as np

    rng = np.random.default_rng(seed)
    l, r = random_term(rng, 3, 4), random_term(rng, 3, 4)
    dec = decide_identity(l, r)
    if not dec.valid:
        val = dec.counterexample
        assert eval_term(l, val) != eval_term(r, val)
        assert val == _first_counterexample_brute(l, r)
    else:
        assert _first_counterexample_brute(l, r) is None


@given(st.integers(0, 10_000))
def test_ada_terms_transfer_to_power(seed):
    import numpy as np

    rng = np.random.default_rng(seed)
    l, r = random_term(rng, 2, 3, ada=True), random_term(rng, 2, 3, ada=True)
    assert decide_identity(l, r, mode="ada").valid == holds_in_power(l, r, 2)
