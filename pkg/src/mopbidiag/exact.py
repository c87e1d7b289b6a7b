"""Exact rational matrices: Gauss-Borel factorization, triangular inverses,
Bareiss determinants and banded views.

Scalars are ``fractions.Fraction``; matrices are immutable row-major tuples.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


class MathError(Exception):
    """A mathematical condition (not a bug, not a usage error) blocked the computation."""


class SingularLeadingMinor(MathError):
    def __init__(self, k: int):
        self.k = k
        super().__init__(f"leading principal minor of order {k} vanishes")


class ZeroDiagonal(MathError):
    def __init__(self, k: int):
        self.k = k
        super().__init__(f"zero diagonal entry at position {k}")


class BandViolation(MathError):
    def __init__(self, i: int, j: int, value):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"entry ({i},{j}) = {fmt(value)} lies outside the band")


def rat(v) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/4"`` to a Fraction."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    return Fraction(v)


def fmt(v: Fraction) -> str:
    v = rat(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


class RMatrix:
    """Dense immutable rational matrix."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable], rows: int | None = None, cols: int | None = None):
        rows_t = tuple(tuple(rat(v) for v in r) for r in data)
        if rows is None:
            rows = len(rows_t)
        if cols is None:
            cols = len(rows_t[0]) if rows_t else 0
        if len(rows_t) != rows or any(len(r) != cols for r in rows_t):
            raise ValueError("ragged or mis-sized matrix data")
        self.rows, self.cols, self.data = rows, cols, rows_t

    # constructors
    @classmethod
    def _raw(cls, data: tuple, rows: int, cols: int) -> "RMatrix":
        m = object.__new__(cls)
        m.rows, m.cols, m.data = rows, cols, data
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RMatrix":
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RMatrix":
        return cls._raw(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def from_fn(cls, rows: int, cols: int, fn) -> "RMatrix":
        return cls._raw(tuple(tuple(rat(fn(i, j)) for j in range(cols)) for i in range(rows)), rows, cols)

    @classmethod
    def diag(cls, values: Sequence) -> "RMatrix":
        n = len(values)
        return cls.from_fn(n, n, lambda i, j: values[i] if i == j else 0)

    # access
    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def tolists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.data]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "RMatrix":
        return RMatrix._raw(tuple(r[c0:c1] for r in self.data[r0:r1]), r1 - r0, c1 - c0)

    def leading(self, k: int) -> "RMatrix":
        return self.block(0, k, 0, k)

    def with_entry(self, i: int, j: int, value) -> "RMatrix":
        rows = [list(r) for r in self.data]
        rows[i][j] = rat(value)
        return RMatrix(rows)

    # arithmetic
    def __eq__(self, other) -> bool:
        return isinstance(other, RMatrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __add__(self, other: "RMatrix") -> "RMatrix":
        _same_shape(self, other)
        return RMatrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
                            self.rows, self.cols)

    def __sub__(self, other: "RMatrix") -> "RMatrix":
        _same_shape(self, other)
        return RMatrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
                            self.rows, self.cols)

    def __neg__(self) -> "RMatrix":
        return self.scale(-1)

    def scale(self, c) -> "RMatrix":
        c = rat(c)
        return RMatrix._raw(tuple(tuple(c * a for a in r) for r in self.data), self.rows, self.cols)

    def __matmul__(self, other: "RMatrix") -> "RMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        # sparse rows of the right factor: triangular and banded inputs are common
        right = [[(j, v) for j, v in enumerate(r) if v] for r in other.data]
        out = []
        for r in self.data:
            acc = [ZERO] * other.cols
            for k, a in enumerate(r):
                if a:
                    for j, v in right[k]:
                        acc[j] += a * v
            out.append(tuple(acc))
        return RMatrix._raw(tuple(out), self.rows, other.cols)

    @property
    def T(self) -> "RMatrix":
        return RMatrix._raw(tuple(zip(*self.data)) if self.rows else (), self.cols, self.rows)

    def is_zero(self) -> bool:
        return not any(v for r in self.data for v in r)

    def to_json(self) -> list[list[str]]:
        return [[fmt(v) for v in r] for r in self.data]

    @classmethod
    def from_json(cls, rows) -> "RMatrix":
        return cls([[Fraction(v) for v in r] for r in rows])

    def __repr__(self) -> str:
        return f"RMatrix({self.to_json()})"


def _same_shape(a: RMatrix, b: RMatrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def vstack(*ms: RMatrix) -> RMatrix:
    cols = ms[0].cols
    return RMatrix._raw(tuple(r for m in ms for r in m.data), sum(m.rows for m in ms), cols)


def hstack(*ms: RMatrix) -> RMatrix:
    rows = ms[0].rows
    return RMatrix._raw(tuple(sum((m.data[i] for m in ms), ()) for i in range(rows)),
                        rows, sum(m.cols for m in ms))


def matprod(*ms: RMatrix) -> RMatrix:
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out


def _require_square(m: RMatrix) -> None:
    if m.rows != m.cols:
        raise ValueError(f"square matrix required, got {m.shape}")


def doolittle(m: RMatrix) -> tuple[list[list[Fraction]], list[list[Fraction]], int | None]:
    """Pivot-free M = Lt*Ut with Lt unit lower.

    Stops at the first zero pivot and returns its 0-based position (None when
    complete). Rows of Lt and columns of Ut beyond that point are left zero.
    """
    _require_square(m)
    n = m.rows
    a = [list(r) for r in m.data]
    lt = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    ut = [[ZERO] * n for _ in range(n)]
    for k in range(n):
        for j in range(k, n):
            ut[k][j] = a[k][j] - sum((lt[k][s] * ut[s][j] for s in range(k) if lt[k][s]), ZERO)
        if ut[k][k] == 0:
            # row k of Lt is still meaningful; finish it before stopping
            return lt, ut, k
        for i in range(k + 1, n):
            lt[i][k] = (a[i][k] - sum((lt[i][s] * ut[s][k] for s in range(k) if lt[i][s]), ZERO)) / ut[k][k]
    return lt, ut, None


def gauss_borel(m: RMatrix) -> tuple[RMatrix, RMatrix]:
    """Return (L, U) with L unit lower, U upper and ``m == inv(L) @ inv(U)``."""
    lt, ut, bad = doolittle(m)
    if bad is not None:
        raise SingularLeadingMinor(bad + 1)
    lt_m, ut_m = RMatrix(lt), RMatrix(ut)
    return tri_invert(lt_m, "lower"), tri_invert(ut_m, "upper")


def partial_lower_factor(m: RMatrix) -> tuple[RMatrix, int]:
    """Rows of L that exist even when a later leading minor vanishes.

    Row r of L only needs the leading minors of orders 1..r. Returns the
    top-left block of L with as many rows as are determined, and that count.
    """
    lt, _, bad = doolittle(m)
    k = m.rows if bad is None else bad + 1
    return tri_invert(RMatrix(lt).leading(k), "lower"), k


def tri_invert(t: RMatrix, kind: str) -> RMatrix:
    """Exact inverse of a lower or upper triangular matrix by substitution."""
    _require_square(t)
    if kind not in ("lower", "upper"):
        raise ValueError("kind must be 'lower' or 'upper'")
    n = t.rows
    for k in range(n):
        if t[k, k] == 0:
            raise ZeroDiagonal(k + 1)
    src = t if kind == "lower" else RMatrix._raw(tuple(r[::-1] for r in t.data[::-1]), n, n)
    a = src.data
    inv = [[ZERO] * n for _ in range(n)]
    for j in range(n):
        inv[j][j] = 1 / a[j][j]
        for i in range(j + 1, n):
            s = sum((a[i][k] * inv[k][j] for k in range(j, i) if a[i][k]), ZERO)
            inv[i][j] = -s / a[i][i]
    if kind == "upper":
        inv = [r[::-1] for r in inv[::-1]]
    return RMatrix(inv)


def bareiss_det(m: RMatrix) -> Fraction:
    """Determinant by fraction-free elimination on the cleared integer matrix."""
    _require_square(m)
    n = m.rows
    if n == 0:
        return ONE
    # scale each row to integers, remember the factor
    scale = ONE
    a = []
    for r in m.data:
        den = 1
        for v in r:
            den = den * v.denominator // _gcd(den, v.denominator)
        scale /= den
        a.append([int(v * den) for v in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def det(m: RMatrix) -> Fraction:
    return bareiss_det(m)


def leading_minors(m: RMatrix) -> list[Fraction]:
    _require_square(m)
    return [bareiss_det(m.leading(k)) for k in range(1, m.rows + 1)]


def det_small(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant of a tiny list-of-lists matrix (sizes used by tau tables)."""
    n = len(rows)
    if n == 0:
        return ONE
    return bareiss_det(RMatrix(rows))


class Banded:
    """Validated banded view: ``diagonals[offset]`` for offset in -sub..sup."""

    __slots__ = ("dim", "sub", "sup", "diagonals")

    def __init__(self, dim: int, sub: int, sup: int, diagonals: dict[int, tuple]):
        for off in range(-sub, sup + 1):
            if len(diagonals.get(off, ())) != max(dim - abs(off), 0):
                raise ValueError(f"diagonal {off} has wrong length")
        self.dim, self.sub, self.sup, self.diagonals = dim, sub, sup, diagonals

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        off = j - i
        if off > self.sup or -off > self.sub:
            return ZERO
        return self.diagonals[off][min(i, j)]

    def to_matrix(self) -> RMatrix:
        return RMatrix.from_fn(self.dim, self.dim, lambda i, j: self[i, j])

    def to_json(self) -> dict[str, list[str]]:
        return {str(off): [fmt(v) for v in self.diagonals[off]] for off in sorted(self.diagonals)}


def band_extract(m: RMatrix, p: int, q: int) -> Banded:
    """Banded view with ``p`` subdiagonals and ``q`` superdiagonals."""
    _require_square(m)
    n = m.rows
    for i in range(n):
        for j in range(n):
            if (j - i > q or i - j > p) and m[i, j] != 0:
                raise BandViolation(i, j, m[i, j])
    diags = {}
    for off in range(-p, q + 1):
        diags[off] = tuple(m[i, i + off] if off >= 0 else m[i - off, i] for i in range(max(n - abs(off), 0)))
    return Banded(n, p, q, diags)
