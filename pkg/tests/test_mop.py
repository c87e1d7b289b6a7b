from dataclasses import replace
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from mopbidiag.exact import RMatrix, SingularLeadingMinor, leading_minors
from mopbidiag.hahn import HahnParams, hahn_measure, recurrence_table
from mopbidiag.measures import DiscreteMeasureMatrix, moment_matrix
from mopbidiag.mop import (block_relations_check, border_blocks, build_families, families_from_factors,
                           orthogonality_check, recursion_identity_check, recursion_matrices,
                           recursion_relation_check)

from conftest import measures


def test_two_node_families(two_node):
    fam = build_families(two_node, 2)
    assert fam.B[0][0] == (1,) and fam.B[1][0] == (F(-3, 2), 1)
    assert fam.A[0][0] == (F(1, 2),) and fam.A[0][1] == (-3, 2)


def test_single_size_family():
    mu = DiscreteMeasureMatrix.build(1, 2, [(F(1, 3), [[2, 5]]), (4, [[1, F(1, 2)]])])
    fam = build_families(mu, 1)
    assert fam.B[0][0] == (1,)
    assert fam.A[0][0] == (fam.U[0, 0],) and fam.U[0, 0] == F(1, 3)


def test_duplicate_weights_hit_first_vanishing_minor():
    mu = DiscreteMeasureMatrix.build(1, 2, [(x, [[1, 1]]) for x in (0, 1, 2)])
    minors = leading_minors(moment_matrix(mu, 4, 4))
    first = next(k for k, v in enumerate(minors, 1) if v == 0)
    with pytest.raises(SingularLeadingMinor) as exc:
        build_families(mu, 4)
    assert exc.value.k == first == 2


def test_orthogonality(two_node):
    fam = build_families(two_node, 2)
    assert orthogonality_check(fam, two_node)
    bad = families_from_factors(1, 1, fam.L, fam.U.with_entry(0, 0, 1))
    assert not orthogonality_check(bad, two_node)


def test_orthogonality_single_size(two_node):
    fam = build_families(two_node, 1)
    assert orthogonality_check(fam, two_node)
    assert 2 * fam.A0(0, 0) * fam.B0(0, 0) == 1


def test_border_blocks(two_node):
    fam = build_families(two_node, 2)
    _, _, agrees = border_blocks(two_node, fam)
    assert agrees
    at_zero = DiscreteMeasureMatrix.build(1, 1, [(0, [3])])
    lb, _, _ = border_blocks(at_zero, build_families(at_zero, 1))
    assert lb.is_zero()
    _, ub, _ = border_blocks(two_node, build_families(two_node, 1))
    assert ub == RMatrix([[3]])  # first moment 1 + 2


def test_recursion_matrix_two_node(two_node):
    rec = recursion_matrices(two_node, 2)
    assert rec.T_matrix == RMatrix([[F(3, 2), 1], [F(1, 4), F(3, 2)]])


def test_recursion_matrix_single_node():
    c = F(-7, 3)
    mu = DiscreteMeasureMatrix.build(1, 1, [(c, [5])])
    assert recursion_matrices(mu, 1).T_matrix == RMatrix([[c]])


def test_recursion_matrix_hahn_two_weights():
    params = HahnParams((F(1, 2), F(1, 5)), 0, 6)
    T = recursion_matrices(hahn_measure(params), 6).T_matrix
    table = recurrence_table(params, 6)
    assert len(table) == 6 + 5 + 4
    assert all(T[n, n - j] == v for (j, n), v in table.items())


def test_recursion_relations(two_node):
    fam = build_families(two_node, 2)
    rec = recursion_matrices(two_node, 2, fam)
    assert recursion_relation_check(fam, rec, 7)
    assert all(recursion_relation_check(fam, rec, x) for x in two_node.nodes)
    bad = replace(rec, T_rect_B=rec.T_rect_B.with_entry(0, 0, rec.T_rect_B[0, 0] + 1))
    assert not recursion_relation_check(fam, bad, 7)


def test_block_relations_control():
    mu = DiscreteMeasureMatrix.build(1, 2, [(x, [[1, F(2) ** x]]) for x in (1, 2, 3, 5, 7, 8)])
    fam = build_families(mu, 6)
    rec = recursion_matrices(mu, 6, fam)
    assert block_relations_check(mu, fam, rec)
    bad = replace(rec, corner_A=rec.corner_A.with_entry(0, 0, rec.corner_A[0, 0] + 1))
    assert not block_relations_check(mu, fam, bad)


@settings(max_examples=30, deadline=None)
@given(measures())
def test_biorthogonality_property(inst):
    mu, n = inst
    try:
        fam = build_families(mu, n)
    except SingularLeadingMinor:
        return
    assert orthogonality_check(fam, mu)
    # unitriangular normalization: B_k is monic on its own step-line monomial
    assert all(fam.B[k][k % mu.q][k // mu.q] == 1 for k in range(n))


@settings(max_examples=30, deadline=None)
@given(measures())
def test_recursion_band_and_relations(inst):
    mu, n = inst
    try:
        fam = build_families(mu, n)
    except SingularLeadingMinor:
        return
    rec = recursion_matrices(mu, n, fam)
    assert rec.T_matrix == rec.T_alt
    assert all(v == 1 for v in rec.T.diagonals[mu.q])
    assert block_relations_check(mu, fam, rec)
    if n > max(mu.p, mu.q):
        assert recursion_identity_check(fam, rec)
