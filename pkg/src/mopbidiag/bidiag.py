"""Bidiagonal factorization of the recursion matrix.

The authoritative producer is :func:`christoffel_chain`, which reads each
bidiagonal factor off a pair of Christoffel-perturbed Gauss-Borel factors.
Everything else here recomputes the same entries another way (tau
determinants, diagonal ratios of the triangular factors, polynomial
coefficients) or checks an identity the factors must satisfy.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import (ONE, ZERO, MathError, RMatrix, SingularLeadingMinor, det_small, fmt,
                    gauss_borel, matprod, partial_lower_factor,
                    tri_invert)
from .measures import DiscreteMeasureMatrix, christoffel_perturb, moment_matrix, shift_block
from .mop import (PolyFamily, RecursionSet, border_blocks, families_from_factors,
                  recursion_square)


class PerturbedSingular(MathError):
    def __init__(self, kind: str, index: int, k: int, tau_index: int | None = None):
        self.kind, self.index, self.k, self.tau_index = kind, index, k, tau_index
        letter = "b" if kind == "B-side" else "a"
        msg = f"{kind} perturbation {letter}={index}: leading minor of order {k} vanishes"
        if tau_index is not None:
            t = "B" if kind == "B-side" else "A"
            msg += (f"; existence of the transformed orthogonality fails because "
                    f"tau^{t}_{{{index},{tau_index}}} = 0")
        super().__init__(msg)


class TauZero(MathError):
    def __init__(self, which: str, index: tuple):
        self.which, self.index = which, index
        super().__init__(f"tau^{which}{index} vanishes in a denominator")


class ZeroDenominator(MathError):
    pass


@dataclass(frozen=True)
class BidiagonalChain:
    """Entries of L_1..L_p (subdiagonals) and U_q..U_1 (diagonals).

    ``L[a][n]`` for n in 1..N-1 and ``U[b][n]`` for n in 0..N-1; partial
    chains (from formulas with restricted ranges) simply omit keys.
    """

    N: int
    p: int
    q: int
    L: dict = field(default_factory=dict)
    U: dict = field(default_factory=dict)

    def L_matrix(self, a: int, size: int | None = None) -> RMatrix:
        n = self.N if size is None else size
        col = self.L[a]
        return RMatrix.from_fn(n, n, lambda i, j: 1 if i == j else (col[i] if j == i - 1 else 0))

    def U_matrix(self, b: int, size: int | None = None) -> RMatrix:
        n = self.N if size is None else size
        col = self.U[b]
        return RMatrix.from_fn(n, n, lambda i, j: col[i] if i == j else (1 if j == i + 1 else 0))

    def lower_product(self, size: int | None = None) -> RMatrix:
        return matprod(*[self.L_matrix(a, size) for a in range(1, self.p + 1)])

    def upper_product(self, size: int | None = None) -> RMatrix:
        return matprod(*[self.U_matrix(b, size) for b in range(self.q, 0, -1)])

    def product(self, size: int | None = None) -> RMatrix:
        return self.lower_product(size) @ self.upper_product(size)

    def truncate(self, m: int) -> "BidiagonalChain":
        L = {a: {n: v for n, v in col.items() if n < m} for a, col in self.L.items()}
        U = {b: {n: v for n, v in col.items() if n < m} for b, col in self.U.items()}
        return BidiagonalChain(m, self.p, self.q, L, U)

    def entries(self):
        """Deterministic (kind, index, n, value) listing."""
        for a in sorted(self.L):
            for n in sorted(self.L[a]):
                yield "L", a, n, self.L[a][n]
        for b in sorted(self.U):
            for n in sorted(self.U[b]):
                yield "U", b, n, self.U[b][n]

    def to_json(self, verified: bool | None = None) -> dict:
        out = {
            "N": self.N, "p": self.p, "q": self.q,
            "L": [{"a": a, "entries": {str(n): fmt(v) for n, v in sorted(self.L[a].items())}}
                  for a in sorted(self.L)],
            "U": [{"b": b, "entries": {str(n): fmt(v) for n, v in sorted(self.U[b].items())}}
                  for b in sorted(self.U)],
        }
        if verified is not None:
            out["verified"] = verified
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "BidiagonalChain":
        L = {int(f["a"]): {int(n): Fraction(v) for n, v in f["entries"].items()} for f in obj["L"]}
        U = {int(f["b"]): {int(n): Fraction(v) for n, v in f["entries"].items()} for f in obj["U"]}
        return cls(int(obj["N"]), int(obj["p"]), int(obj["q"]), L, U)

    def agrees_with(self, other: "BidiagonalChain") -> bool:
        """Equal on every index both define."""
        for mine, theirs in ((self.L, other.L), (self.U, other.U)):
            for k in set(mine) & set(theirs):
                for n in set(mine[k]) & set(theirs[k]):
                    if mine[k][n] != theirs[k][n]:
                        return False
        return True

    def mismatches(self, other: "BidiagonalChain") -> list:
        out = []
        for kind, mine, theirs in (("L", self.L, other.L), ("U", self.U, other.U)):
            for k in sorted(set(mine) & set(theirs)):
                for n in sorted(set(mine[k]) & set(theirs[k])):
                    if mine[k][n] != theirs[k][n]:
                        out.append((kind, k, n, mine[k][n], theirs[k][n]))
        return out


def chain_to_csv(chain: BidiagonalChain) -> str:
    lines = ["factor,kind,a_or_b,n,value"]
    for kind, idx, n, v in chain.entries():
        kind_name = "lower" if kind == "L" else "upper"
        lines.append(f"{kind}{idx},{kind_name},{idx},{n},{fmt(v)}")
    return "\n".join(lines) + "\n"


# -- perturbed factorizations -------------------------------------------------

def perturbed_factorizations(mu: DiscreteMeasureMatrix, N: int) -> dict:
    """Gauss-Borel factors of every perturbation the chain needs, keyed by (n, m)."""
    out = {(0, 0): gauss_borel(moment_matrix(mu, N, N))}
    for b in range(1, mu.q + 1):
        try:
            out[(b, 0)] = gauss_borel(moment_matrix(christoffel_perturb(mu, b, 0), N, N))
        except SingularLeadingMinor as e:
            raise PerturbedSingular("B-side", b, e.k, _diagnose_b(mu, b, e.k)) from None
    for a in range(1, mu.p + 1):
        try:
            out[(0, a)] = gauss_borel(moment_matrix(christoffel_perturb(mu, 0, a), N, N))
        except SingularLeadingMinor as e:
            raise PerturbedSingular("A-side", a, e.k, _diagnose_a(mu, a, e.k)) from None
    return out


def christoffel_chain(mu: DiscreteMeasureMatrix, N: int, factors: dict | None = None) -> BidiagonalChain:
    factors = factors if factors is not None else perturbed_factorizations(mu, N)
    p, q = mu.p, mu.q
    U = {}
    for b in range(1, q + 1):
        ub = tri_invert(factors[(b, 0)][1], "upper") @ factors[(b - 1, 0)][1]
        _assert_upper_bidiagonal(ub)
        U[b] = {n: ub[n, n] for n in range(N)}
    L = {}
    for a in range(1, p + 1):
        la = factors[(0, a - 1)][0] @ tri_invert(factors[(0, a)][0], "lower")
        _assert_lower_bidiagonal(la)
        L[a] = {n: la[n, n - 1] for n in range(1, N)}
    return BidiagonalChain(N, p, q, L, U)


def _assert_upper_bidiagonal(m: RMatrix) -> None:
    n = m.rows
    for i in range(n):
        for j in range(n):
            if j == i + 1 and m[i, j] != ONE or (j != i and j != i + 1 and m[i, j] != 0):
                raise RuntimeError("perturbed quotient is not unit-superdiagonal upper bidiagonal")


def _assert_lower_bidiagonal(m: RMatrix) -> None:
    n = m.rows
    for i in range(n):
        for j in range(n):
            if i == j and m[i, j] != ONE or (j != i and j != i - 1 and m[i, j] != 0):
                raise RuntimeError("perturbed quotient is not unit lower bidiagonal")


# -- tau determinants ---------------------------------------------------------

@dataclass(frozen=True)
class TauTable:
    N: int
    p: int
    q: int
    tauB: dict  # (b, n) -> value
    tauA: dict  # (a, n) -> value


def tau_B_value(fam: PolyFamily, b: int, n: int) -> Fraction:
    return det_small([[fam.B0(j, n + i) for j in range(b)] for i in range(b)])


def tau_A_value(fam: PolyFamily, a: int, n: int) -> Fraction:
    # columns in reversed order: n+a-1 down to n
    return det_small([[fam.A0(i, n + a - 1 - c) for c in range(a)] for i in range(a)])


def tau_tables(fam: PolyFamily) -> TauTable:
    """All tau determinants the family supports (window inside 0..N-1)."""
    N, p, q = fam.N, fam.p, fam.q
    tb = {(b, n): tau_B_value(fam, b, n) for b in range(q + 1) for n in range(N - b + 1)}
    ta = {(a, n): tau_A_value(fam, a, n) for a in range(p + 1) for n in range(N - a + 1)}
    return TauTable(N, p, q, tb, ta)


def bidiag_from_tau(tau: TauTable) -> BidiagonalChain:
    """Christoffel tau-ratio formulas; only indices whose taus exist are filled."""
    N, p, q = tau.N, tau.p, tau.q
    tb, ta = tau.tauB, tau.tauA
    U = {}
    for b in range(1, q + 1):
        U[b] = {}
        for n in range(N - b):
            den1, den2 = tb[(b - 1, n + 1)], tb[(b, n)]
            if den1 == 0:
                raise TauZero("B", (b - 1, n + 1))
            if den2 == 0:
                raise TauZero("B", (b, n))
            U[b][n] = -tb[(b - 1, n)] * tb[(b, n + 1)] / (den1 * den2)
    L = {}
    for a in range(1, p + 1):
        L[a] = {}
        for n in range(N - a):
            den1, den2 = ta[(a - 1, n + 1)], ta[(a, n + 1)]
            if den1 == 0:
                raise TauZero("A", (a - 1, n + 1))
            if den2 == 0:
                raise TauZero("A", (a, n + 1))
            L[a][n + 1] = -ta[(a - 1, n + 2)] * ta[(a, n)] / (den1 * den2)
    return BidiagonalChain(N, p, q, L, U)


# -- triangular-factor forms --------------------------------------------------

def _sub_coeff(fam: PolyFamily, n: int) -> Fraction:
    """Coefficient of B_n on the step-line monomial just below its leading one."""
    m, j = divmod(n - 1, fam.q)
    c = fam.B[n][j]
    return c[m] if m < len(c) else ZERO


def _lead_coeff(fam: PolyFamily, n: int) -> Fraction:
    """Coefficient of A_n on its own step-line monomial."""
    m, i = divmod(n, fam.p)
    c = fam.A[i][n]
    return c[m] if m < len(c) else ZERO


def bidiag_from_triangular(mu: DiscreteMeasureMatrix, N: int, factors: dict | None = None) -> dict:
    """Entries via diagonal ratios / subdiagonal differences of the perturbed factors.

    Returns four partial chains: ``ratio`` (diagonal ratios of U, subdiagonal
    differences of L), ``alt`` (the alternative pairing: U from subdiagonals of
    L, L from diagonals of U), and their restatements ``coeff`` and
    ``coeff_alt`` read from the polynomial coefficient tables.
    """
    factors = factors if factors is not None else perturbed_factorizations(mu, N)
    p, q = mu.p, mu.q
    Lf = {k: v[0] for k, v in factors.items()}
    Uf = {k: v[1] for k, v in factors.items()}
    fams = {k: families_from_factors(q, p, *v) for k, v in factors.items()}

    ratio = BidiagonalChain(N, p, q, {}, {})
    alt = BidiagonalChain(N, p, q, {}, {})
    coeff = BidiagonalChain(N, p, q, {}, {})
    coeff_alt = BidiagonalChain(N, p, q, {}, {})
    for b in range(1, q + 1):
        prev, cur = (b - 1, 0), (b, 0)
        ratio.U[b] = {n: Uf[prev][n, n] / Uf[cur][n, n] for n in range(N)}
        alt.U[b] = {n: (Lf[cur][n, n - 1] if n else ZERO) - Lf[prev][n + 1, n] for n in range(N - 1)}
        coeff.U[b] = {n: _lead_coeff(fams[prev], n) / _lead_coeff(fams[cur], n) for n in range(N)}
        coeff_alt.U[b] = {n: (_sub_coeff(fams[cur], n) if n else ZERO) - _sub_coeff(fams[prev], n + 1)
                          for n in range(N - 1)}
    for a in range(1, p + 1):
        prev, cur = (0, a - 1), (0, a)
        ratio.L[a] = {n: Lf[prev][n, n - 1] - Lf[cur][n, n - 1] for n in range(1, N)}
        alt.L[a] = {n: Uf[cur][n - 1, n - 1] / Uf[prev][n, n] for n in range(1, N)}
        coeff.L[a] = {n: _sub_coeff(fams[prev], n) - _sub_coeff(fams[cur], n) for n in range(1, N)}
        coeff_alt.L[a] = {n: _lead_coeff(fams[cur], n - 1) / _lead_coeff(fams[prev], n) for n in range(1, N)}
    return {"ratio": ratio, "alt": alt, "coeff": coeff, "coeff_alt": coeff_alt}


# -- last diagonal entry of U_1 -----------------------------------------------

def u1_last(mu: DiscreteMeasureMatrix, fam: PolyFamily, exponent_shift: int = 0) -> Fraction:
    """U_{1,N-1} from the bordered block and the first B component at 0."""
    N = fam.N
    lead = fam.B0(0, N - 1)
    if lead == 0:
        raise ZeroDenominator("first component of B_{N-1} vanishes at 0")
    Lb, _, _ = border_blocks(mu, fam, exponent_shift)
    col = [fam.B0(0, k) for k in range(N)]
    return sum((Lb[0, k] * col[k] for k in range(N)), ZERO) / lead


# -- identities ---------------------------------------------------------------

def det_identity_check(fam: PolyFamily, rec: RecursionSet, tau: TauTable, literal: bool = False) -> bool:
    """Product of the lowest subdiagonal times the extreme A-tau against the extreme B-tau,
    plus the quotient form.

    Under the unitriangular-L normalization the product form holds up to one
    constant, its own n = 0 value (-1)^(p-1) tau^A_{p,0}; the default compares
    both sides after dividing by that value. ``literal`` skips the rescaling.
    """
    N, p, q = fam.N, fam.p, fam.q
    T = rec.T_matrix
    top = min(N - p, N - q)
    sides = []
    for n in range(top + 1):
        prod = ONE
        for i in range(n):
            prod *= T[i + p, i]
        lhs = (-1) ** ((p - 1) * (n + 1)) * prod * tau.tauA[(p, n)]
        rhs = (-1) ** ((q - 1) * n) * tau.tauB[(q, n)]
        sides.append((lhs, rhs))
    if not sides:
        return True
    l0, r0 = sides[0]
    for lhs, rhs in sides:
        if literal:
            if lhs != rhs:
                return False
        elif lhs * r0 != rhs * l0:
            return False
    for n in range(top):
        sub = T[n + p, n]
        if sub == 0 or tau.tauA[(p, n + 1)] == 0 or tau.tauB[(q, n + 1)] == 0:
            continue
        lhs = (-1) ** (p - 1) * tau.tauA[(p, n)] / (sub * tau.tauA[(p, n + 1)])
        rhs = (-1) ** (q - 1) * tau.tauB[(q, n)] / tau.tauB[(q, n + 1)]
        if lhs != rhs:
            return False
    return True


def _rect_B(L_big: RMatrix, q: int) -> RMatrix:
    n = L_big.rows
    return L_big.leading(n - q) @ shift_block(q, n - q) @ tri_invert(L_big, "lower")


def _rect_A(U_big: RMatrix, p: int) -> RMatrix:
    n = U_big.rows
    return tri_invert(U_big, "upper") @ shift_block(p, n - p).T @ U_big.leading(n - p)


def transformed_recursion_check(mu: DiscreteMeasureMatrix, N: int, factors: dict | None = None,
                                chain: BidiagonalChain | None = None) -> bool:
    """Conjugation of the rectangular recursion matrices by single bidiagonal factors,
    and the corner-corrected truncation identity for the first left perturbation."""
    p, q = mu.p, mu.q
    factors = factors if factors is not None else perturbed_factorizations(mu, N)
    chain = chain if chain is not None else christoffel_chain(mu, N, factors)
    if N > p:
        for b in range(1, q + 1):
            ub = chain.U_matrix(b)
            ub_short = chain.U_matrix(b, N - p)
            lhs = ub @ _rect_A(factors[(b - 1, 0)][1], p) @ tri_invert(ub_short, "upper")
            if lhs != _rect_A(factors[(b, 0)][1], p):
                return False
    if N > q:
        for a in range(1, p + 1):
            la = chain.L_matrix(a)
            la_short = chain.L_matrix(a, N - q)
            lhs = tri_invert(la_short, "lower") @ _rect_B(factors[(0, a - 1)][0], q) @ la
            if lhs != _rect_B(factors[(0, a)][0], q):
                return False
    if N >= 2 * p and N > p:
        if truncation_identity(mu, N, factors, chain) is False:
            return False
    return True


def truncation_identity(mu: DiscreteMeasureMatrix, N: int, factors: dict, chain: BidiagonalChain,
                        literal: bool = False) -> bool:
    """Recursion matrix of the first left perturbation at size N-p from the truncated chain.

    The correction is a single row supported on the last p columns. With
    ``literal`` the correction is added without conjugating by the inverse of
    the truncated U_1 (the uncorrected printed form).
    """
    p, q = mu.p, mu.q
    m = N - p
    u1 = chain.U_matrix(1, m)
    rest = matprod(u1, *[chain.L_matrix(a, m) for a in range(1, p + 1)],
                   *[chain.U_matrix(b, m) for b in range(q, 1, -1)])
    rect = _rect_A(factors[(0, 0)][1], p)
    row = [ZERO] * (m - p) + list(rect.data[m][m - p:])  # first row of the p x p corner
    corr = RMatrix([[ZERO] * m for _ in range(m - 1)] + [row])
    if not literal:
        corr = corr @ tri_invert(u1, "upper")
    pert = christoffel_perturb(mu, 1, 0)
    Lp, Up = factors[(1, 0)][0].leading(m), factors[(1, 0)][1].leading(m)
    t_pert, _ = recursion_square(pert, Lp, Up)
    return rest + corr == t_pert


def factor_group_check(factors: dict, chain: BidiagonalChain, q: int, p: int) -> bool:
    """Grouped lower factors and grouped upper factors against the fully perturbed factorizations."""
    L0, U0 = factors[(0, 0)]
    ok = chain.lower_product() == L0 @ tri_invert(factors[(q, 0)][0], "lower")
    ok = ok and chain.lower_product() == L0 @ tri_invert(factors[(0, p)][0], "lower")
    ok = ok and chain.upper_product() == tri_invert(factors[(0, p)][1], "upper") @ U0
    ok = ok and chain.upper_product() == tri_invert(factors[(q, 0)][1], "upper") @ U0
    return ok


def connection_check(mu: DiscreteMeasureMatrix, N: int, factors: dict, chain: BidiagonalChain,
                     pairing: str = "matched") -> bool | None:
    """Connection formulas between consecutive perturbed families at x = 0..deg+1.

    ``matched``: B_(0,a-1) = L_a B_(0,a) and A_(b-1,0) = A_(b,0) U_b.
    ``literal``: B_(a-1,0) = L_a B_(a,0) and A_(0,b-1) = A_(0,b) U_b, only
    meaningful for indices up to min(p, q); returns None when that range is empty.
    """
    p, q = mu.p, mu.q
    fams = {k: families_from_factors(q, p, *v) for k, v in factors.items()}
    xs = [Fraction(k, 2) for k in range(-2, N // min(p, q) + 3)]
    if pairing == "matched":
        pairs_b = [((0, a - 1), (0, a), a) for a in range(1, p + 1)]
        pairs_a = [((b - 1, 0), (b, 0), b) for b in range(1, q + 1)]
    else:
        r = min(p, q)
        if r == 0:
            return None
        pairs_b = [((a - 1, 0), (a, 0), a) for a in range(1, r + 1)]
        pairs_a = [((0, b - 1), (0, b), b) for b in range(1, r + 1)]
    for x in xs:
        for lo, hi, a in pairs_b:
            if fams[lo].B_at(x) != chain.L_matrix(a) @ fams[hi].B_at(x):
                return False
        for lo, hi, b in pairs_a:
            if fams[lo].A_at(x) != fams[hi].A_at(x) @ chain.U_matrix(b):
                return False
    return True


# -- existence diagnosis ------------------------------------------------------

def tau_B_extended(mu: DiscreteMeasureMatrix, b: int, n: int) -> Fraction | None:
    """tau^B_{b,n} from the rows of L determined by the leading minors alone.

    Row r of L needs only minors of orders 1..r, so this still works at the
    edge where the next moment matrix is singular. None when undetermined.
    """
    size = n + b
    L, rows = partial_lower_factor(moment_matrix(mu, size, size))
    if rows < size:
        return None
    fam = families_from_factors(mu.q, mu.p, L, RMatrix.identity(size))
    return tau_B_value(fam, b, n)


def tau_A_extended(mu: DiscreteMeasureMatrix, a: int, n: int) -> Fraction | None:
    size = n + a
    try:
        L, U = gauss_borel(moment_matrix(mu, size, size))
    except SingularLeadingMinor:
        return None
    return tau_A_value(families_from_factors(mu.q, mu.p, L, U), a, n)


def _diagnose_b(mu, b, k):
    try:
        vals = [tau_B_extended(mu, b, n) for n in range(k + 1)]
    except SingularLeadingMinor:
        return None
    zeros = [n for n, v in enumerate(vals) if v == 0]
    return zeros[0] if zeros else None


def _diagnose_a(mu, a, k):
    vals = [tau_A_extended(mu, a, n) for n in range(k + 1)]
    zeros = [n for n, v in enumerate(vals) if v == 0]
    return zeros[0] if zeros else None
