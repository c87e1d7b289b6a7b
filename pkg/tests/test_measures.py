import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mopbidiag.exact import RMatrix
from mopbidiag.measures import (DiscreteMeasureMatrix, basic_shift, christoffel_perturb, hankel_check,
                                load_measure, moment_matrix, monomial_matrix, shift_block,
                                spectral_check, xblock)

from conftest import measures


def test_monomial_matrix_examples():
    assert monomial_matrix(2, 3, 5) == RMatrix([[1, 0], [0, 1], [5, 0]])
    assert monomial_matrix(1, 3, 2) == RMatrix([[1], [2], [4]])
    assert monomial_matrix(3, 3, 7) == RMatrix.identity(3)


def test_shift_block_examples():
    assert shift_block(1, 2) == RMatrix([[0, 1, 0], [0, 0, 1]])
    assert shift_block(2, 2) == RMatrix([[0, 0, 1, 0], [0, 0, 0, 1]])
    assert basic_shift(2) @ basic_shift(3) == shift_block(2, 2)


def test_moment_matrix_examples(two_node):
    single = DiscreteMeasureMatrix.build(1, 1, [(0, [3])])
    assert moment_matrix(single, 2, 2) == RMatrix([[3, 0], [0, 0]])
    assert moment_matrix(two_node, 2, 2) == RMatrix([[2, 3], [3, 5]])
    one = DiscreteMeasureMatrix.build(1, 2, [(1, [[1, 1]])])
    assert moment_matrix(one, 2, 2) == RMatrix([[1, 1], [1, 1]])


def test_hankel_examples(two_node):
    assert hankel_check(two_node, 2, 2)
    assert hankel_check(two_node, 3, 3)
    big = moment_matrix(two_node, 3, 3)
    assert not hankel_check(two_node, 2, 2, big.with_entry(1, 1, big[1, 1] + 1))


def test_hankel_blind_to_corner_entry(two_node):
    # the (0,0) moment lies outside both sides of the shift relation
    big = moment_matrix(two_node, 3, 3)
    assert hankel_check(two_node, 2, 2, big.with_entry(0, 0, big[0, 0] + 1))


def test_spectral_control():
    assert spectral_check(2, 3, 5)
    assert not spectral_check(2, 3, 5, monomial_matrix(2, 5, 5).with_entry(4, 0, 1))


def test_christoffel_perturb_examples(two_node):
    assert christoffel_perturb(two_node, 0, 0) == two_node
    assert christoffel_perturb(two_node, 1, 0) == DiscreteMeasureMatrix.build(1, 1, [(1, [1]), (2, [2])])
    c = F(3, 2)
    w = RMatrix([[1, 2, 0], [F(1, 3), 5, 7]])
    mu = DiscreteMeasureMatrix.build(2, 3, [(c, w)])
    assert xblock(2, 1, c) == RMatrix([[0, 1], [c, 0]])
    assert christoffel_perturb(mu, 1, 0).support[0][1] == xblock(2, 1, c) @ w


def test_validation():
    with pytest.raises(ValueError):
        DiscreteMeasureMatrix.build(1, 1, [(1, [1]), (1, [2])])
    with pytest.raises(ValueError):
        DiscreteMeasureMatrix.build(2, 1, [(1, [1])])


def test_json_round_trip(tmp_path):
    mu = DiscreteMeasureMatrix.build(2, 3, [(F(1, 2), [[1, 0, F(2, 3)], [0, 1, 0]])])
    path = tmp_path / "m.json"
    path.write_text(mu.dumps())
    assert load_measure(path) == mu
    assert json.loads(mu.dumps())["support"][0]["weight"] == [["1", "0", "2/3"], ["0", "1", "0"]]


@settings(max_examples=40, deadline=None)
@given(measures())
def test_hankel_property(inst):
    mu, n = inst
    assert hankel_check(mu, n, n + 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 9), st.fractions(-5, 5, max_denominator=7))
def test_spectral_property(r, n, x):
    assert spectral_check(r, n, x)


@settings(max_examples=30, deadline=None)
@given(measures(), st.integers(0, 2), st.integers(0, 2))
def test_perturbation_orders_compose(inst, n, m):
    mu, _ = inst
    step = christoffel_perturb(christoffel_perturb(mu, n, m), 1, 1)
    assert step == christoffel_perturb(mu, n + 1, m + 1)
