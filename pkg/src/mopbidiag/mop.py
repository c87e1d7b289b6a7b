"""Mixed-type multiple orthogonal polynomial families and their banded
recursion matrices."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (ONE, ZERO, Banded, RMatrix, band_extract, gauss_borel, hstack,
                    rat, tri_invert, vstack)
from .measures import DiscreteMeasureMatrix, integrate, moment_matrix, shift_block, xblock

Poly = tuple  # coefficients, lowest degree first, trailing zeros trimmed


def poly_trim(c) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_eval(c: Poly, x) -> Fraction:
    acc = ZERO
    for v in reversed(c):
        acc = acc * x + v
    return acc


def poly_str(c: Poly) -> str:
    from .exact import fmt
    if not c:
        return "0"
    parts = []
    for k, v in enumerate(c):
        if v:
            parts.append(fmt(v) + ("" if k == 0 else "*x" if k == 1 else f"*x^{k}"))
    return " + ".join(parts)


@dataclass(frozen=True)
class PolyFamily:
    """B (N rows of q polynomials) and A (p rows of N polynomials) with their factors."""

    N: int
    q: int
    p: int
    L: RMatrix
    U: RMatrix
    B: tuple  # B[n][j]
    A: tuple  # A[i][n]

    def B_at(self, x, rows: range | None = None) -> RMatrix:
        rows = range(self.N) if rows is None else rows
        return RMatrix([[poly_eval(self.B[n][j], x) for j in range(self.q)] for n in rows])

    def A_at(self, x, cols: range | None = None) -> RMatrix:
        cols = range(self.N) if cols is None else cols
        return RMatrix([[poly_eval(self.A[i][n], x) for n in cols] for i in range(self.p)])

    def B0(self, j: int, n: int) -> Fraction:
        """Value at 0 of component j (0-based) of B_n."""
        c = self.B[n][j]
        return c[0] if c else ZERO

    def A0(self, i: int, n: int) -> Fraction:
        c = self.A[i][n]
        return c[0] if c else ZERO

    def truncate(self, k: int) -> "PolyFamily":
        return families_from_factors(self.q, self.p, self.L.leading(k), self.U.leading(k))

    def to_json(self) -> dict:
        from .exact import fmt
        return {
            "N": self.N, "q": self.q, "p": self.p,
            "B": [[[fmt(v) for v in c] for c in row] for row in self.B],
            "A": [[[fmt(v) for v in c] for c in row] for row in self.A],
        }


def families_from_factors(q: int, p: int, L: RMatrix, U: RMatrix) -> PolyFamily:
    """B = L X_q and A = X_p^T U as coefficient tables."""
    N = L.rows
    B = []
    for n in range(N):
        comps = [[ZERO] * (n // q + 1) for _ in range(q)]
        for k in range(n + 1):
            v = L[n, k]
            if v:
                m, j = divmod(k, q)
                comps[j][m] += v
        B.append(tuple(poly_trim(c) for c in comps))
    A = []
    for i in range(p):
        row = []
        for n in range(U.cols):
            c = [ZERO] * (n // p + 1)
            for k in range(i, min(n, U.rows - 1) + 1, p):
                c[k // p] += U[k, n]
            row.append(poly_trim(c))
        A.append(tuple(row))
    return PolyFamily(N, q, p, L, U, tuple(B), tuple(A))


def build_families(mu: DiscreteMeasureMatrix, N: int) -> PolyFamily:
    L, U = gauss_borel(moment_matrix(mu, N, N))
    return families_from_factors(mu.q, mu.p, L, U)


def orthogonality_check(fam: PolyFamily, mu: DiscreteMeasureMatrix) -> bool:
    """sum_k B(x_k) W_k A(x_k) must be the identity."""
    pairing = integrate(mu, lambda x: fam.B_at(x), lambda x: fam.A_at(x))
    return pairing == RMatrix.identity(fam.N)


def border_blocks(mu: DiscreteMeasureMatrix, fam: PolyFamily, exponent_shift: int = 0):
    """Bordered blocks of the inverse factors by finite summation.

    Returns (L_border, U_border, agrees) where ``agrees`` reports the cross-check
    against the blocks read off the rectangular moment matrices.
    ``exponent_shift`` lowers the power of x (used only to probe alternatives).
    """
    q, p, N = mu.q, mu.p, fam.N
    nq, sq = divmod(N, q)
    np_, sp = divmod(N, p)
    e_q = nq - exponent_shift
    e_p = np_ - exponent_shift
    Lb = integrate(mu, lambda x: xblock(q, sq, x).scale(rat(x) ** e_q), lambda x: fam.A_at(x))
    Ub = integrate(mu, lambda x: fam.B_at(x), lambda x: xblock(p, sp, x).T.scale(rat(x) ** e_p))
    lb_ref = (moment_matrix(mu, N + q, N) @ fam.U).block(N, N + q, 0, N)
    ub_ref = (fam.L @ moment_matrix(mu, N, N + p)).block(0, N, N, N + p)
    return Lb, Ub, (Lb == lb_ref and Ub == ub_ref)


@dataclass(frozen=True)
class RecursionSet:
    T: Banded
    T_matrix: RMatrix
    T_rect_B: RMatrix | None  # (N-q) x N
    T_rect_A: RMatrix | None  # N x (N-p)
    corner_B: RMatrix | None  # q x q
    corner_A: RMatrix | None  # p x p
    T_alt: RMatrix  # the second expression, kept for cross-checks

    @property
    def N(self) -> int:
        return self.T.dim


def recursion_square(mu: DiscreteMeasureMatrix, L: RMatrix, U: RMatrix) -> tuple[RMatrix, RMatrix]:
    """Both expressions of the square recursion matrix: via the left and via the right shift."""
    q, p, N = mu.q, mu.p, L.rows
    t_left = L @ shift_block(q, N) @ (moment_matrix(mu, N + q, N) @ U)
    t_right = (L @ moment_matrix(mu, N, N + p)) @ shift_block(p, N).T @ U
    return t_left, t_right


def recursion_matrices(mu: DiscreteMeasureMatrix, N: int, fam: PolyFamily | None = None) -> RecursionSet:
    q, p = mu.q, mu.p
    fam = fam if fam is not None else build_families(mu, N)
    L, U = fam.L, fam.U
    t, t_alt = recursion_square(mu, L, U)
    banded = band_extract(t, p, q)
    for v in banded.diagonals[q]:
        if v != ONE:
            raise RuntimeError("top superdiagonal of the recursion matrix is not identically one")
    rect_b = rect_a = corner_b = corner_a = None
    if N > q:
        rect_b = L.leading(N - q) @ shift_block(q, N - q) @ tri_invert(L, "lower")
        if N >= 2 * q:
            corner_b = L.block(N - 2 * q, N - q, N - 2 * q, N - q) @ tri_invert(L.block(N - q, N, N - q, N), "lower")
    if N > p:
        rect_a = tri_invert(U, "upper") @ shift_block(p, N - p).T @ U.leading(N - p)
        if N >= 2 * p:
            corner_a = tri_invert(U.block(N - p, N, N - p, N), "upper") @ U.block(N - 2 * p, N - p, N - 2 * p, N - p)
    return RecursionSet(banded, t, rect_b, rect_a, corner_b, corner_a, t_alt)


def corner_integrals(mu: DiscreteMeasureMatrix, fam: PolyFamily) -> tuple[RMatrix | None, RMatrix | None]:
    """Corner blocks as finite-sum pairings of the polynomial families.

    The pairing carries one factor of x: without it biorthogonality would make
    both corners vanish identically.
    """
    q, p, N = mu.q, mu.p, fam.N
    cb = ca = None
    if N >= 2 * q:
        cb = integrate(mu, lambda x: fam.B_at(x, range(N - 2 * q, N - q)).scale(x),
                       lambda x: fam.A_at(x, range(N - q, N)))
    if N >= 2 * p:
        ca = integrate(mu, lambda x: fam.B_at(x, range(N - p, N)).scale(x),
                       lambda x: fam.A_at(x, range(N - 2 * p, N - p)))
    return cb, ca


def block_relations_check(mu: DiscreteMeasureMatrix, fam: PolyFamily, rec: RecursionSet) -> bool:
    """Block structure of the rectangular recursion matrices and their corners.

    Compares against recursion matrices rebuilt independently at the truncated
    sizes, the two square expressions, and the corner integrals.
    """
    q, p, N = mu.q, mu.p, fam.N
    if rec.T_matrix != rec.T_alt:
        return False
    cb, ca = corner_integrals(mu, fam)
    if rec.T_rect_B is not None:
        small = fam.truncate(N - q)
        t_small, _ = recursion_square(mu, small.L, small.U)
        if rec.T_rect_B.block(0, N - q, 0, N - q) != t_small:
            return False
        if rec.T_matrix.leading(N - q) != t_small:
            return False
        right = rec.T_rect_B.block(0, N - q, N - q, N)
        if rec.corner_B is not None:
            expect = vstack(RMatrix.zeros(N - 2 * q, q), rec.corner_B) if N > 2 * q else rec.corner_B
            if right != expect or rec.corner_B != cb:
                return False
    if rec.T_rect_A is not None:
        small = fam.truncate(N - p)
        t_small, _ = recursion_square(mu, small.L, small.U)
        if rec.T_rect_A.block(0, N - p, 0, N - p) != t_small:
            return False
        bottom = rec.T_rect_A.block(N - p, N, 0, N - p)
        if rec.corner_A is not None:
            expect = hstack(RMatrix.zeros(p, N - 2 * p), rec.corner_A) if N > 2 * p else rec.corner_A
            if bottom != expect or rec.corner_A != ca:
                return False
    return True


def recursion_relation_check(fam: PolyFamily, rec: RecursionSet, x) -> bool:
    """Both recursion relations at x, plus the corner-corrected square forms."""
    x = rat(x)
    q, p, N = fam.q, fam.p, fam.N
    if N <= max(p, q):
        raise ValueError("recursion relations need N > max(p, q)")
    b_full = fam.B_at(x)
    b_short = b_full.block(0, N - q, 0, q)
    if rec.T_rect_B @ b_full != b_short.scale(x):
        return False
    a_full = fam.A_at(x)
    a_short = a_full.block(0, p, 0, N - p)
    if a_full @ rec.T_rect_A != a_short.scale(x):
        return False
    if rec.corner_B is not None:
        tail = rec.corner_B @ b_full.block(N - q, N, 0, q)
        pad = vstack(RMatrix.zeros(N - 2 * q, q), tail) if N > 2 * q else tail
        if rec.T_matrix.leading(N - q) @ b_short + pad != b_short.scale(x):
            return False
    if rec.corner_A is not None:
        tail = a_full.block(0, p, N - p, N) @ rec.corner_A
        pad = hstack(RMatrix.zeros(p, N - 2 * p), tail) if N > 2 * p else tail
        if a_short @ rec.T_matrix.leading(N - p) + pad != a_short.scale(x):
            return False
    return True


def recursion_identity_check(fam: PolyFamily, rec: RecursionSet) -> bool:
    """Recursion relations as polynomial identities: enough distinct points to pin the degree."""
    deg = fam.N // min(fam.q, fam.p) + 2
    return all(recursion_relation_check(fam, rec, Fraction(k, 3)) for k in range(-1, deg + 1))
