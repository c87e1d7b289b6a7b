from fractions import Fraction as F
from math import factorial
from pathlib import Path

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mopbidiag.bidiag import PerturbedSingular, christoffel_chain
from mopbidiag.hahn import (BottomPole, HahnParams, IndexOutOfFamily, NonTerminating, hahn2_alt_sequence,
                            hahn2_chain, hahn2_chain_alt, hahn2_entries, hahn2_chain_alt_printed, hahn3_chain, hahn_A_at0,
                            hahn_B_at0, hahn_measure, hahn_recurrence_coeff, hahn_tau_bridge, hahn_weight,
                            lemma_sides, pfq_unit, pochhammer, step_line)
from mopbidiag.hahn3 import NotEvaluable, display_entry, hahn3_chain_printed
from mopbidiag.mop import build_families, recursion_matrices
from mopbidiag.verify import discrepancy_report

TWO = HahnParams((F(1, 2), F(1, 5)), 0, 6)
THREE = HahnParams((F(1, 2), F(1, 5), F(9, 7)), 0, 9)


def test_pochhammer_examples():
    assert pochhammer(F(7, 3), 0) == 1
    assert pochhammer(3, 2) == 12
    assert pochhammer(-2, 3) == 0


def test_pfq_examples():
    assert pfq_unit([0, F(1, 3), 5], [F(7, 2), 2]) == 1
    assert pfq_unit([-1, 2], [4]) == F(1, 2)
    assert pfq_unit([-2], []) == 0


def test_pfq_errors():
    with pytest.raises(NonTerminating):
        pfq_unit([F(1, 2), 1], [3])
    with pytest.raises(BottomPole):
        pfq_unit([-3, 1], [-1])


def test_hahn_weight_examples():
    p = HahnParams((F(1, 2),), F(1, 3), 4)
    assert hahn_weight(1, 0, p) == pochhammer(F(4, 3), 4) / factorial(4)
    flat = HahnParams((F(0), F(1, 2)), 0, 5)
    assert all(hahn_weight(1, x, flat) == 1 for x in range(6))
    assert hahn_weight(1, 1, HahnParams((F(1, 2),), 0, 2)) == F(3, 2)


def test_hahn_measure_examples():
    mu = hahn_measure(HahnParams((F(0),), 0, 1))
    assert [(x, w.tolists()) for x, w in mu.support] == [(0, [[1]]), (1, [[1]])]
    mu2 = hahn_measure(HahnParams((F(1, 2), F(1, 5)), F(2, 3), 3))
    expect = pochhammer(F(5, 3), 3) / 6
    assert mu2.support[0][1].tolists() == [[expect, expect]]


def test_B_at_zero_examples():
    assert hahn_B_at0((0, 0), TWO) == 1
    p = HahnParams((F(2, 3), F(1, 7)), F(1, 4), 5)
    a1, b = p.alphas[0], p.beta
    assert hahn_B_at0((1, 0), p) == -5 * (a1 + 1) / (a1 + b + 2)
    assert hahn_B_at0((1, 0), TWO) == F(-18, 5)


def test_A_at_zero_against_pipeline():
    fam = build_families(hahn_measure(TWO), 6)
    assert all(hahn_A_at0(1, step_line(k + 1, 2), TWO) == fam.A0(0, k) for k in range(5))
    assert hahn_A_at0(1, (1, 1), TWO) == fam.A0(0, 1) == F(512, 2457)
    one = HahnParams((F(1, 2),), 0, 6)
    assert hahn_A_at0(1, (1,), one) == build_families(hahn_measure(one), 3).A0(0, 0)
    with pytest.raises(IndexOutOfFamily):
        hahn_A_at0(2, (1, 0), TWO)


def test_recurrence_single_weight_mean():
    p = HahnParams((F(3, 4),), F(-1, 3), 5)
    w = [hahn_weight(1, x, p) for x in range(6)]
    assert hahn_recurrence_coeff(0, 0, p) == sum(x * v for x, v in enumerate(w)) / sum(w)


def test_recurrence_table_two_weights():
    T = recursion_matrices(hahn_measure(TWO), 5).T_matrix
    assert all(hahn_recurrence_coeff(j, n, TWO) == T[n, n - j] for n in range(5) for j in range(3) if n >= j)


def test_two_weight_chain():
    assert hahn2_chain(TWO, 5).U[1][0] == F(18, 5)
    oracle = christoffel_chain(hahn_measure(TWO), 5)
    assert hahn2_chain(TWO, 5) == oracle


def test_alternative_sequence():
    oracle = christoffel_chain(hahn_measure(TWO), 5)
    seq = hahn2_alt_sequence(TWO, 15)
    assert all(seq[6 * n + 1] == oracle.U[1][2 * n] for n in range(3))
    assert seq[10] == oracle.U[1][3] and seq[8] == oracle.L[1][3] == F(1600, 10153)
    assert hahn2_chain_alt(TWO, 5) == oracle
    assert not hahn2_chain_alt_printed(TWO, 5).agrees_with(oracle)


def test_hypergeometric_identities():
    for which in (1, 2):
        for n in range(1, 6):
            lhs, rhs = lemma_sides(which, n, TWO)
            assert lhs == rhs
            lhs, rhs = lemma_sides(which, n, TWO, literal=True)
            a1, b, N = TWO.alphas[0], TWO.beta, TWO.n_supp
            assert lhs == rhs * pochhammer(a1 + b + N + 1, n + which - 1)


def test_three_weight_chain():
    p = THREE
    a1, b, N = p.alphas[0], p.beta, p.n_supp
    chain = hahn3_chain(p, 6)
    assert chain.U[1][0] == N * (a1 + 1) / (a1 + b + 2)
    assert chain == christoffel_chain(hahn_measure(p), 6)


def test_closed_forms_at_removable_singularity():
    # alpha_1 + beta = -1 puts 0/0 into single factors; the chain itself is regular there
    two = HahnParams((F(-1, 2), F(1, 3)), F(-1, 2), 7)
    with pytest.raises(ZeroDivisionError):
        hahn2_entries(two, 5)
    assert hahn2_chain(two, 5) == hahn2_chain_alt(two, 5) == christoffel_chain(hahn_measure(two), 5)
    three = HahnParams((F(-1, 2), F(1, 3), F(2, 5)), F(-1, 2), 10)
    assert hahn3_chain(three, 7) == christoffel_chain(hahn_measure(three), 7)


def test_three_weight_printed_displays():
    oracle = christoffel_chain(hahn_measure(THREE), 6)
    assert display_entry(THREE, "U", 1, 1, printed=True) == -oracle.U[1][1] == F(-15, 7)
    assert display_entry(THREE, "L", 1, 1, printed=True) == oracle.L[1][1]
    with pytest.raises(NotEvaluable):
        display_entry(THREE, "L", 2, 1, printed=True)
    with pytest.raises(NotEvaluable):
        hahn3_chain_printed(THREE, 6)


def test_bridge_two_weights():
    rows = dict(hahn_tau_bridge(TWO, 3))
    assert all(v for k, v in rows.items() if "normalized" in k or "L2" in k)
    assert not any(v for k, v in rows.items() if "as printed" in k)


def test_bridge_three_weights():
    rows = dict(hahn_tau_bridge(THREE, 2))
    assert all(v for k, v in rows.items() if "as printed" not in k)
    assert not any(v for k, v in rows.items() if "as printed" in k)


def test_parameter_validation():
    with pytest.raises(ValueError):
        HahnParams((F(1, 2), F(3, 2)), 0, 4)
    with pytest.raises(ValueError):
        HahnParams((F(-1),), 0, 4)
    with pytest.raises(ValueError):
        HahnParams((), 0, 4)


def test_discrepancy_file_is_current():
    path = Path(__file__).resolve().parents[1] / "DISCREPANCIES.md"
    assert path.read_text() == discrepancy_report()


params = st.tuples(st.fractions(-F(1, 2), 3, max_denominator=7), st.fractions(-F(1, 2), 3, max_denominator=7),
                   st.fractions(-F(1, 2), 2, max_denominator=5), st.integers(4, 7))


@settings(max_examples=12, deadline=None)
@given(params)
def test_two_weight_closed_forms_property(t):
    a1, a2, b, N = t
    assume((a1 - a2).denominator != 1)
    p = HahnParams((a1, a2), b, N)
    try:
        oracle = christoffel_chain(hahn_measure(p), 4)
    except PerturbedSingular:
        assume(False)
    assert hahn2_chain(p, 4) == oracle
    assert hahn2_chain_alt(p, 4) == oracle


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6), st.fractions(-5, 5, max_denominator=9), st.fractions(-5, 5, max_denominator=9))
def test_chu_vandermonde(n, b, c):
    assume(all(c + k != 0 for k in range(n)))
    assert pfq_unit([-n, b], [c]) == pochhammer(c - b, n) / pochhammer(c, n)


@settings(max_examples=60, deadline=None)
@given(st.fractions(-5, 5, max_denominator=9), st.integers(0, 5), st.integers(0, 5))
def test_pochhammer_splits(x, m, n):
    assert pochhammer(x, m + n) == pochhammer(x, m) * pochhammer(x + m, n)


@settings(max_examples=5, deadline=None)
@given(st.tuples(st.fractions(-F(1, 2), 2, max_denominator=5), st.fractions(-F(1, 2), 2, max_denominator=7),
                 st.fractions(-F(1, 2), 2, max_denominator=11), st.fractions(-F(1, 2), 1, max_denominator=3)))
def test_three_weight_closed_forms_property(t):
    a1, a2, a3, b = t
    assume(all((x - y).denominator != 1 for x, y in ((a1, a2), (a1, a3), (a2, a3))))
    p = HahnParams((a1, a2, a3), b, 8)
    mu = hahn_measure(p)
    try:
        oracle = christoffel_chain(mu, 5)
    except PerturbedSingular:
        assume(False)
    assert hahn3_chain(p, 5) == oracle
    T = recursion_matrices(mu, 5).T_matrix
    assert all(hahn_recurrence_coeff(j, n, p) == T[n, n - j] for n in range(5) for j in range(4) if n >= j)
