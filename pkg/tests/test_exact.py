from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mopbidiag.exact import (BandViolation, RMatrix, SingularLeadingMinor, ZeroDiagonal, band_extract,
                             bareiss_det, det_small, fmt, gauss_borel, leading_minors, rat,
                             tri_invert)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def square(n):
    return st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n).map(RMatrix)


def test_gauss_borel_identity():
    L, U = gauss_borel(RMatrix.identity(3))
    assert L == RMatrix.identity(3) and U == RMatrix.identity(3)


def test_gauss_borel_two_by_two():
    L, U = gauss_borel(RMatrix([[2, 3], [3, 5]]))
    assert L == RMatrix([[1, 0], [F(-3, 2), 1]])
    assert U == RMatrix([[F(1, 2), -3], [0, 2]])


def test_gauss_borel_zero_pivot():
    with pytest.raises(SingularLeadingMinor) as exc:
        gauss_borel(RMatrix([[0, 1], [1, 0]]))
    assert exc.value.k == 1


def test_leading_minors_examples():
    assert leading_minors(RMatrix.identity(2)) == [1, 1]
    assert leading_minors(RMatrix([[2, 3], [3, 5]])) == [2, 1]
    assert leading_minors(RMatrix.zeros(2, 2)) == [0, 0]


def test_tri_invert_examples():
    assert tri_invert(RMatrix.identity(4), "upper") == RMatrix.identity(4)
    assert tri_invert(RMatrix([[2, 3], [0, F(1, 2)]]), "upper") == RMatrix([[F(1, 2), -3], [0, 2]])
    with pytest.raises(ZeroDiagonal) as exc:
        tri_invert(RMatrix([[1, 0], [5, 0]]), "lower")
    assert exc.value.k == 2


def test_band_extract_examples():
    b = band_extract(RMatrix.diag([1, 2, 3]), 0, 0)
    assert list(b.diagonals) == [0] and list(b.diagonals[0]) == [1, 2, 3]
    full = band_extract(RMatrix([[1, 1], [1, 1]]), 1, 1)
    assert full.to_matrix() == RMatrix([[1, 1], [1, 1]])
    with pytest.raises(BandViolation) as exc:
        band_extract(RMatrix([[1, 2], [0, 1]]), 0, 0)
    assert (exc.value.i, exc.value.j, exc.value.value) == (0, 1, 2)


def test_rational_parsing_and_format():
    assert rat("3/6") == F(1, 2)
    assert fmt(F(4, 2)) == "2" and fmt(F(-1, 3)) == "-1/3"
    with pytest.raises(TypeError):
        rat(0.5)


def test_json_round_trip():
    m = RMatrix([[F(1, 2), -3], [0, F(7, 9)]])
    assert RMatrix.from_json(m.to_json()) == m


@settings(max_examples=60, deadline=None)
@given(square(4))
def test_factors_invert_the_matrix(m):
    minors = leading_minors(m)
    if any(v == 0 for v in minors):
        with pytest.raises(SingularLeadingMinor) as exc:
            gauss_borel(m)
        assert minors[exc.value.k - 1] == 0 and all(minors[: exc.value.k - 1])
        return
    L, U = gauss_borel(m)
    assert L @ m @ U == RMatrix.identity(4)
    assert all(L[i, i] == 1 for i in range(4))
    assert all(L[i, j] == 0 for i in range(4) for j in range(i + 1, 4))
    assert all(U[i, j] == 0 for i in range(4) for j in range(i))


@settings(max_examples=60, deadline=None)
@given(square(4))
def test_bareiss_agrees_with_cofactor_expansion(m):
    assert bareiss_det(m) == det_small(m.tolists())


@settings(max_examples=40, deadline=None)
@given(square(3), square(3))
def test_determinant_is_multiplicative(a, b):
    assert bareiss_det(a @ b) == bareiss_det(a) * bareiss_det(b)


@settings(max_examples=40, deadline=None)
@given(square(4))
def test_triangular_inverse(m):
    upper = RMatrix.from_fn(4, 4, lambda i, j: m[i, j] if j > i else (m[i, j] or 1) if i == j else 0)
    assert upper @ tri_invert(upper, "upper") == RMatrix.identity(4)
    lower = upper.T
    assert tri_invert(lower, "lower") @ lower == RMatrix.identity(4)
