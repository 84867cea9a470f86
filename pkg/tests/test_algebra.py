import itertools
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from calgebra import (
    AlgebraFileError,
    ClosureError,
    FiniteCAlgebra,
    WidthError,
    all_vectors,
    dump_algebra,
    enumerate_subalgebras,
    enumerate_subalgebras_bruteforce,
    generate,
    m_hash,
    m_hash_complement_algebra,
    orbit_representatives,
    parse_algebra,
    vec,
    verify_c_axioms,
)
from calgebra.algebra import Tables, closure_witness, tables
from calgebra.trit import T, Trit, U

from conftest import alg

# regression value: brute-force closure test of all 2^24 subsets of 3^3 containing T, F, U
N_SUB_3 = 86
N_ORBITS_3 = 26


def lits(M):
    return [str(a) for a in M]


def test_generate_examples():
    assert lits(generate(2)) == ["TT", "FF", "UU"]
    assert lits(generate(2, {vec("FU")})) == ["TT", "TU", "FF", "FU", "UU"]
    assert generate(1, {vec("T")}) == FiniteCAlgebra.full(1)


def test_generate_width_mismatch():
    with pytest.raises(WidthError):
        generate(2, {vec("TFU")})


@given(st.lists(st.sampled_from(all_vectors(2)), max_size=4))
def test_generate_is_closed_and_idempotent(gens):
    M = generate(2, gens)
    assert closure_witness(M.universe) is None
    assert set(gens) <= M.elements
    assert generate(2, M.universe) == M


def test_enumerate_width_2(subs2):
    assert [lits(M) for M in subs2] == [
        ["TT", "FF", "UU"],
        ["TT", "TU", "FF", "FU", "UU"],
        ["TT", "FF", "UT", "UF", "UU"],
        ["TT", "TU", "FF", "FU", "UT", "UF", "UU"],
        lits(all_vectors(2)),
    ]


def test_enumerate_width_1():
    assert enumerate_subalgebras(1) == [FiniteCAlgebra.full(1)]


def test_enumerate_width_3(subs3):
    assert len(subs3) == N_SUB_3
    assert len(set(subs3)) == N_SUB_3
    assert subs3[0] == generate(3) and subs3[-1] == FiniteCAlgebra.full(3)


def test_enumerate_matches_bruteforce(subs2, subs3):
    assert enumerate_subalgebras_bruteforce(2) == subs2
    assert enumerate_subalgebras_bruteforce(3) == subs3


def test_enumerate_bound():
    with pytest.raises(ValueError, match="bound"):
        enumerate_subalgebras(4)


def test_orbits(subs2, subs3):
    reps = orbit_representatives(subs3)
    assert len(reps) == N_ORBITS_3
    assert set(reps) <= set(subs3)
    # M1 and M2 swap under the transposition
    assert len(orbit_representatives(subs2)) == 4


def test_enumerated_are_closed(subs2, subs3):
    for M in subs2 + subs3:
        assert generate(M.width, M.universe) == M
        for a, b in itertools.product(M, repeat=2):
            assert ~a in M and a & b in M and a | b in M


@pytest.mark.parametrize("width", [1, 2, 3])
def test_c_axioms_on_powers(width):
    report = verify_c_axioms(FiniteCAlgebra.full(width))
    assert report.holds, report.lines()
    assert list(report.counterexamples) == [f"C{i}" for i in range(1, 8)]


def test_c_axioms_on_subalgebras(subs2, subs3):
    for M in subs2 + subs3:
        assert verify_c_axioms(M).holds


def _kleene_join_tables(width):
    """3^width with the symmetric (strong Kleene) join in place of the sequential one."""
    tb = tables(all_vectors(width))
    kleene = {}
    for a, b in itertools.product(Trit, repeat=2):
        kleene[a, b] = T if T in (a, b) else (U if U in (a, b) else Trit.F)
    join = np.empty_like(tb.join)
    for i, a in enumerate(tb.universe):
        for j, b in enumerate(tb.universe):
            join[i, j] = tb.pos(type(a).from_trits(kleene[x, y] for x, y in zip(a, b)))
    return Tables(tb.universe, tb.neg, tb.meet, join)


def test_mutated_join_is_caught():
    report = verify_c_axioms(_kleene_join_tables(2))
    assert not report.holds
    assert {"C5", "C7"} & set(report.failed())
    name = report.failed()[0]
    assert "FAILS" in dict(zip(report.counterexamples, report.lines()))[name]


def test_counterexample_really_fails():
    from calgebra.algebra import _c_axioms

    tb = _kleene_join_tables(2)
    report = verify_c_axioms(tb)
    axioms = _c_axioms(tb)
    for name in report.failed():
        args = [np.array([tb.pos(x)]) for x in report.counterexamples[name]]
        lhs, rhs = axioms[name][1](*args)
        assert lhs[0] != rhs[0]


def test_tables_reject_non_closed():
    with pytest.raises(ClosureError):
        tables([vec("TT"), vec("FF"), vec("UU"), vec("TF")])


# -- Boolean part ---------------------------------------------------------------

def test_m_hash_examples(subs2):
    assert lits(sorted(m_hash(FiniteCAlgebra.full(2)))) == ["TT", "TF", "FT", "FF"]
    assert lits(sorted(m_hash(subs2[1]))) == ["TT", "FF"]
    for M in subs2:
        assert {M.T, M.F} <= m_hash(M)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_m_hash_size(n):
    assert len(m_hash(FiniteCAlgebra.full(n))) == 2 ** n


def test_m_hash_is_boolean_subalgebra(subs2, subs3):
    for M in subs2 + subs3:
        B = m_hash(M)
        for a, b in itertools.product(B, repeat=2):
            assert ~a in B and a & b in B and a | b in B
            assert a & b == b & a and a | b == b | a


def test_complement_algebra(subs2, subs3):
    comp, C = m_hash_complement_algebra(subs2[1])
    assert lits(sorted(comp)) == ["TU", "FU", "UU"]
    for M in subs2 + subs3:
        comp, C = m_hash_complement_algebra(M)
        assert M.U in comp
        assert comp == M.elements - m_hash(M)
        assert C.elements == comp | {M.T, M.F}


# -- files ------------------------------------------------------------------

def test_parse_and_dump_round_trip(subs2, subs3):
    for M in subs2 + subs3[::7]:
        text = dump_algebra(M, comment="round trip")
        assert parse_algebra(text) == M


def test_parse_comments_and_close():
    text = "# M1\nwidth=2\n\nTT  # top\nFF\nUU\nFU\n"
    assert lits(parse_algebra(text, close=True)) == ["TT", "TU", "FF", "FU", "UU"]


@pytest.mark.parametrize("text,line", [
    ("widht=2\nTT\n", 1),
    ("width=x\n", 1),
    ("width=0\n", 1),
    ("width=2\nTT\nFF\nUU\nTQ\n", 5),
    ("width=2\nTT\nFF\nUU\nTFU\n", 5),
    ("width=2\nTT\nFF\nUU\nFU\n", 5),
    ("width=2\nTT\nFF\n", 3),
    ("", 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(AlgebraFileError) as exc:
        parse_algebra(text)
    assert exc.value.line == line


def test_from_elements_checks():
    with pytest.raises(ClosureError):
        FiniteCAlgebra.from_elements(2, [vec("TT"), vec("FF")])
    with pytest.raises(WidthError):
        FiniteCAlgebra.from_elements(2, [vec("TTT")])


def test_closure_kernel_agrees_with_generate():
    from calgebra import kernels

    rng = random.Random(3)
    vs = all_vectors(3)
    tb = kernels.op_tables(3)
    for _ in range(40):
        gens = rng.sample(vs, rng.randint(0, 4))
        seed = np.zeros(27, dtype=bool)
        for g in gens + [vec("TTT"), vec("FFF"), vec("UUU")]:
            seed[g.index] = True
        got = {vs[i] for i in np.flatnonzero(kernels.closure(tb["neg"], tb["conj"], seed))}
        assert got == generate(3, gens).elements


def test_equality_and_hash():
    M = alg(2, "TT", "FF", "UU")
    assert M == generate(2) and hash(M) == hash(generate(2))
    assert M != generate(2, {vec("FU")})
    assert M.T == vec("TT") and M.F == vec("FF") and M.U == vec("UU")
    assert str(M) == "{TT, FF, UU}"
