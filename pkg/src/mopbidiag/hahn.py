"""Multiple Hahn polynomials (one row of p discrete weights on {0..N}).

Values at 0 of both families, the cyclic closed form of the recurrence
coefficients and closed-form bidiagonal factorizations for two weights.
The three-weight forms live in :mod:`mopbidiag.hahn3`.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .bidiag import BidiagonalChain, TauZero
from .exact import ONE, ZERO, MathError, det_small, rat
from .measures import DiscreteMeasureMatrix
from .exact import RMatrix


class NonTerminating(MathError):
    pass


class BottomPole(MathError):
    pass


class IndexOutOfFamily(MathError):
    pass


def pochhammer(x, n: int) -> Fraction:
    if n < 0:
        raise ValueError("pochhammer length must be nonnegative")
    x = x if isinstance(x, _Jet) else rat(x)
    out = ONE
    for k in range(n):
        out *= x + k
    return out


def _nonpos_int(v: Fraction) -> bool:
    return v.denominator == 1 and v <= 0


def pfq_unit(tops: Sequence, bottoms: Sequence) -> Fraction:
    """Terminating generalized hypergeometric series at argument 1.

    Parameters may be series in a small parameter (see ``_Jet``); only exact
    rational tops decide where the sum stops.
    """
    tops = [a if isinstance(a, _Jet) else rat(a) for a in tops]
    bottoms = [b if isinstance(b, _Jet) else rat(b) for b in bottoms]
    stops = [-int(a) for a in tops if isinstance(a, Fraction) and _nonpos_int(a)]
    if not stops:
        raise NonTerminating(f"no nonpositive integer among top parameters {tops}")
    order = min(stops)
    total = ZERO
    term = ONE
    for l in range(order + 1):
        if l:
            num = ONE
            for a in tops:
                num *= a + l - 1
            den = Fraction(l)
            for b in bottoms:
                den *= b + l - 1
            if den == 0:
                raise BottomPole(f"bottom Pochhammer vanishes at term {l}")
            term = term * num / den
        total += term
    return total


@dataclass(frozen=True)
class HahnParams:
    alphas: tuple
    beta: Fraction
    n_supp: int

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(rat(a) for a in self.alphas))
        object.__setattr__(self, "beta", rat(self.beta))
        if not 1 <= len(self.alphas) <= 3:
            raise ValueError("between one and three weights are supported")
        if any(a <= -1 for a in self.alphas) or self.beta <= -1:
            raise ValueError("parameters must exceed -1")
        for i, a in enumerate(self.alphas):
            for b in self.alphas[i + 1:]:
                if (a - b).denominator == 1:
                    raise ValueError("alpha differences must not be integers")
        if self.n_supp < 0:
            raise ValueError("support parameter must be nonnegative")

    @property
    def p(self) -> int:
        return len(self.alphas)

    def alpha(self, i: int) -> Fraction:
        """Cyclic extension: alpha_{i + p n} = alpha_i + n, with 1-based i."""
        n, r = divmod(i - 1, self.p)
        return self.alphas[r] + n


def hahn_weight(i: int, x: int, params: HahnParams) -> Fraction:
    """Weight number i (1-based) at node x."""
    N = params.n_supp
    if not 0 <= x <= N:
        raise ValueError("node outside {0..N}")
    a, b = params.alphas[i - 1], params.beta
    return pochhammer(a + 1, x) / factorial(x) * pochhammer(b + 1, N - x) / factorial(N - x)


def hahn_measure(params: HahnParams) -> DiscreteMeasureMatrix:
    pts = []
    for x in range(params.n_supp + 1):
        pts.append((Fraction(x), RMatrix([[hahn_weight(i, x, params) for i in range(1, params.p + 1)]])))
    return DiscreteMeasureMatrix(1, params.p, tuple(pts))


def step_line(k: int, p: int) -> tuple:
    m, s = divmod(k, p)
    return tuple([m + 1] * s + [m] * (p - s))


def hahn_B_at0(nvec: Sequence[int], params: HahnParams) -> Fraction:
    N = params.n_supp
    size = sum(nvec)
    if size > N:
        raise IndexOutOfFamily(f"|n| = {size} exceeds the support parameter {N}")
    out = Fraction((-1) ** size * factorial(N), factorial(N - size))
    for a, ni in zip(params.alphas, nvec):
        out *= pochhammer(a + 1, ni) / pochhammer(a + params.beta + size + 1, ni)
    return out


def hahn_A_at0(a: int, nvec: Sequence[int], params: HahnParams) -> Fraction:
    """Component a (1-based) of the type I function with multi-index nvec, at 0."""
    N, beta, al = params.n_supp, params.beta, params.alphas
    size = sum(nvec)
    na = nvec[a - 1]
    if na == 0:
        raise IndexOutOfFamily(f"component {a} has degree -1 for multi-index {tuple(nvec)}")
    if size > N:
        raise IndexOutOfFamily(f"|n| = {size} exceeds the support parameter {N}")
    aa = al[a - 1]
    pre = Fraction((-1) ** (size - 1) * factorial(N + 1 - size), factorial(na - 1))
    pre /= pochhammer(beta + 1, size - 1) * pochhammer(aa + beta + size, N + 2 - size)
    for k, nk in enumerate(nvec):
        pre *= pochhammer(al[k] + beta + size, nk)
        if k != a - 1:
            pre /= pochhammer(al[k] - aa, nk)
    others = [k for k in range(len(al)) if k != a - 1]
    tops = [-na + 1, aa + beta + size] + [aa + 1 - al[k] - nvec[k] for k in others]
    bottoms = [aa + 1 - al[k] for k in others] + [aa + beta + N + 2]
    return pre * pfq_unit(tops, bottoms)


def B0_seq(n: int, params: HahnParams) -> Fraction:
    """B_n(0) on the step line."""
    return hahn_B_at0(step_line(n, params.p), params)


def A0_seq(a: int, n: int, params: HahnParams) -> Fraction:
    """A^{(a)}_n(0) on the step line; the sequence label is one less than |n|.

    A component whose multi-index entry is zero is the zero polynomial.
    """
    nvec = step_line(n + 1, params.p)
    if nvec[a - 1] == 0:
        return ZERO
    return hahn_A_at0(a, nvec, params)


class _Jet:
    """Truncated Laurent series in a small parameter e, used to take limits at removable singularities.

    Value is sum(coeffs[i] * e**(val + i)); ``rel`` is the number of trusted
    coefficients (None for an exact polynomial).
    """

    __slots__ = ("coeffs", "val", "rel")
    DEPTH = 12

    def __init__(self, coeffs, val=0, rel=None):
        coeffs = list(coeffs)
        while coeffs and coeffs[0] == 0 and (rel is None or rel > 0):
            coeffs.pop(0)
            val += 1
            rel = None if rel is None else rel - 1
        self.coeffs, self.val, self.rel = coeffs, val, rel

    @staticmethod
    def lift(x) -> "_Jet":
        return x if isinstance(x, _Jet) else _Jet([rat(x)])

    def _top(self):
        return None if self.rel is None else self.val + self.rel

    def __add__(self, other):
        o = _Jet.lift(other)
        if not o.coeffs:
            return _Jet(self.coeffs, self.val, _min_rel(self, o, self.val))
        if not self.coeffs:
            return _Jet(o.coeffs, o.val, _min_rel(self, o, o.val))
        lo = min(self.val, o.val)
        size = max(self.val + len(self.coeffs), o.val + len(o.coeffs)) - lo
        out = [ZERO] * size
        for j in (self, o):
            for i, c in enumerate(j.coeffs):
                out[j.val - lo + i] += c
        rel = _min_rel(self, o, lo)
        return _Jet(out[:rel] if rel is not None else out, lo, rel)

    __radd__ = __add__

    def __neg__(self):
        return _Jet([-c for c in self.coeffs], self.val, self.rel)

    def __sub__(self, other):
        return self + (-_Jet.lift(other))

    def __rsub__(self, other):
        return _Jet.lift(other) + (-self)

    def __mul__(self, other):
        o = _Jet.lift(other)
        rels = [r for r in (self.rel, o.rel) if r is not None]
        rel = min(rels) if rels else None
        size = len(self.coeffs) + len(o.coeffs) - 1 if self.coeffs and o.coeffs else 0
        if rel is not None:
            size = min(size, rel)
        out = [ZERO] * max(size, 0)
        for i, a in enumerate(self.coeffs):
            for k, b in enumerate(o.coeffs):
                if i + k < len(out):
                    out[i + k] += a * b
        return _Jet(out, self.val + o.val, rel)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, (int, Fraction, _Jet)):
            return NotImplemented
        d = self - other
        return not d.coeffs and d.rel is None

    __hash__ = None

    def __bool__(self):
        return not self == 0

    def inverse(self) -> "_Jet":
        if not self.coeffs:
            raise ZeroDivisionError("series vanishes to the tracked order")
        rel = self.DEPTH if self.rel is None else min(self.rel, self.DEPTH)
        c0 = self.coeffs[0]
        out = [ONE / c0]
        for n in range(1, rel):
            acc = sum((self.coeffs[i] * out[n - i] for i in range(1, min(n, len(self.coeffs) - 1) + 1)), ZERO)
            out.append(-acc / c0)
        return _Jet(out, -self.val, rel)

    def __truediv__(self, other):
        return self * _Jet.lift(other).inverse()

    def __rtruediv__(self, other):
        return _Jet.lift(other) * self.inverse()

    def constant(self) -> Fraction:
        """Limit as e -> 0; raises if the series has a genuine pole."""
        if self.val < 0:
            raise ZeroDivisionError("genuine pole")
        if self.val > 0 or not self.coeffs:
            if self.rel is not None and self.val + self.rel <= 0:
                raise ZeroDivisionError("insufficient precision")
            return ZERO
        return self.coeffs[0]


def _min_rel(a: _Jet, b: _Jet, lo: int):
    tops = [t for t in (a._top(), b._top()) if t is not None]
    return min(tops) - lo if tops else None


def _poch(x, n: int):
    out = ONE
    for k in range(n):
        out = (x + k) * out
    return out


def _recurrence_formula(j: int, n: int, params: HahnParams, beta):
    p, N = params.p, params.n_supp
    m, k = divmod(n, p)
    al = params.alpha
    c = (p + 1) * m + k
    head = -(al(k + 1) + m + 1) if j == 0 else ZERO
    t1 = _poch(N - p * m - k + 1, j) * _poch(beta + p * m + k + 1 - j, j) * (al(k + 1) + beta + c + 1 - j)
    for l in range(p + k + 2 - j, p + k + 2):
        t1 = t1 / (al(l) + beta + c - j)
    t2 = ONE
    for l in range(1, p + 1):
        t2 = t2 * _poch(al(l) + beta + p * m + k + 1 - j, j)
    for l in range(k + 1, p + k + 1):
        t2 = t2 / _poch(al(l) + beta + c + 1 - j, j)
    s = ZERO
    for i in range(k + 1, p + k + 2 - j):
        if m == 0 and i <= p:
            continue  # carries the factor alpha_i - alpha_i + m = 0
        term = (al(i) + m) * (al(i) + beta + N + m + 1) / _poch(al(i) + beta + c - j, j + 2)
        for l in range(1, p + 1):
            term = term * (al(i) - al(l) + m)
        for l in range(k + 1, p + k + 2 - j):
            if l != i:
                term = term / (al(i) - al(l))
        s = s + term
    return head + t1 * t2 * s


def hahn_recurrence_coeff(j: int, n: int, params: HahnParams) -> Fraction:
    """b^j_n: coefficient of B_{n-j} in x B_n (b^0_n is the diagonal).

    At parameters where a single term has a removable pole (alpha_i + beta a
    small integer) the value is the limit in beta, taken with a truncated
    Laurent expansion.
    """
    if not 0 <= j <= params.p:
        raise ValueError("j must lie in 0..p")
    try:
        return _recurrence_formula(j, n, params, params.beta)
    except ZeroDivisionError:
        return _recurrence_formula(j, n, params, _Jet([params.beta, ONE])).constant()


def with_series_beta(params: HahnParams) -> HahnParams:
    """Copy of ``params`` whose beta is the series beta + e (validation bypassed)."""
    out = copy.copy(params)
    object.__setattr__(out, "beta", _Jet([params.beta, ONE]))
    return out


LIMIT_ERRORS = (ZeroDivisionError, TauZero, BottomPole)


def beta_limit_chain(build, params: HahnParams, n_trunc: int, errors=LIMIT_ERRORS) -> BidiagonalChain:
    """Evaluate ``build(params, n_trunc)``; where a closed form hits 0/0, take the limit in beta.

    Entries are rational in the moments, so wherever the factorization exists
    the limit equals the value. A genuine pole re-raises the original error.
    """
    try:
        return build(params, n_trunc)
    except errors as exc:
        first = exc
    try:
        jet = build(with_series_beta(params), n_trunc)
        L = {a: {k: _Jet.lift(v).constant() for k, v in row.items()} for a, row in jet.L.items()}
        U = {b: {k: _Jet.lift(v).constant() for k, v in row.items()} for b, row in jet.U.items()}
    except errors + (MathError,):
        raise first from None
    return BidiagonalChain(jet.N, jet.p, jet.q, L, U)


# -- two weights --------------------------------------------------------------

def _ratio(num: Fraction, den: Fraction, label: str) -> Fraction:
    if den == 0:
        raise TauZero("hypergeometric", (label,))
    return num / den


def hahn2_entries(params: HahnParams, n_trunc: int) -> BidiagonalChain:
    """Closed forms in terms of 3F2 series with bottom (a1-a2+1, a1+b+N+2)."""
    if params.p != 2:
        raise ValueError("two weights required")
    a1, a2 = params.alphas
    b, N = params.beta, params.n_supp
    poch = pochhammer

    def F(t1, t2, t3):
        return pfq_unit([t1, t2, t3], [a1 - a2 + 1, a1 + b + N + 2])

    U, L1, L2 = {}, {}, {}
    for n in range(n_trunc):
        i = 2 * n
        if i < n_trunc:
            U[i] = ((N - 2 * n) * (a1 + n + 1) * (a1 + b + 2 * n + 1) * (a2 + b + 2 * n + 1)
                    / (poch(a1 + b + 3 * n + 1, 2) * (a2 + b + 3 * n + 1)))
        if i + 1 < n_trunc:
            U[i + 1] = ((N - 2 * n - 1) * (a2 + n + 1) * (a1 + b + 2 * n + 2) * (a2 + b + 2 * n + 2)
                        / ((a1 + b + 3 * n + 3) * poch(a2 + b + 3 * n + 2, 2)))
        if 1 <= i < n_trunc:
            L1[i] = ((N + 1 - 2 * n) * n * (b + 2 * n) * (a2 + b + 2 * n)
                     / (poch(a1 + b + 3 * n, 2) * (a2 + b + 3 * n))
                     * _ratio(F(-n + 1, a1 + b + 2 * n, a1 - a2 - n + 1),
                              F(-n, a1 + b + 2 * n + 1, a1 - a2 - n + 1), f"L1,{i}"))
            L2[i] = (n * (b + 2 * n) * (a1 + b + 2 * n + 1) * (a2 + b + N + n + 1)
                     / ((a1 + b + 3 * n + 1) * poch(a2 + b + 3 * n, 2))
                     * _ratio(F(-n, a1 + b + 2 * n + 2, a1 - a2 - n),
                              F(-n, a1 + b + 2 * n + 1, a1 - a2 - n + 1), f"L2,{i}"))
        if i + 1 < n_trunc:
            L1[i + 1] = ((N - 2 * n) * (b + 2 * n + 1) * (a2 - a1 + n) * (a2 + b + 2 * n + 1)
                         / ((a1 + b + 3 * n + 2) * poch(a2 + b + 3 * n + 1, 2))
                         * _ratio(F(-n, a1 + b + 2 * n + 1, a1 - a2 - n + 1),
                                  F(-n, a1 + b + 2 * n + 2, a1 - a2 - n), f"L1,{i + 1}"))
            L2[i + 1] = ((b + 2 * n + 1) * (a1 + b + 2 * n + 2) * (a1 + b + N + n + 2) * (a1 - a2 + n + 1)
                         / (poch(a1 + b + 3 * n + 2, 2) * (a2 + b + 3 * n + 2))
                         * _ratio(F(-n - 1, a1 + b + 2 * n + 3, a1 - a2 - n),
                                  F(-n, a1 + b + 2 * n + 2, a1 - a2 - n), f"L2,{i + 1}"))
    return BidiagonalChain(n_trunc, 2, 1, {1: L1, 2: L2}, {1: U})


def hahn2_chain(params: HahnParams, n_trunc: int) -> BidiagonalChain:
    return beta_limit_chain(hahn2_entries, params, n_trunc)


def hahn2_alt_sequence(params: HahnParams, count: int) -> dict:
    """The sequence a_1..a_count from the 3F2 forms with -N among the top parameters."""
    a1, a2 = params.alphas
    b, N = params.beta, params.n_supp
    poch = pochhammer

    def G(t1, t3, d1, d2):
        return pfq_unit([t1, -N, t3], [d1, d2])

    out = {}
    n = 0
    while 6 * n + 1 <= count:
        vals = {}
        vals[1] = ((N - 2 * n) * (a1 + 1 + n) * (a1 + b + 2 * n + 1) * (a2 + b + 2 * n + 1)
                   / (poch(a1 + b + 3 * n + 1, 2) * (a2 + b + 3 * n + 1)))
        vals[4] = ((N - 2 * n - 1) * (a2 + 1 + n) * (a1 + b + 2 * n + 2) * (a2 + b + 2 * n + 2)
                   / ((a1 + b + 3 * n + 3) * poch(a2 + b + 3 * n + 2, 2)))
        vals[2] = ((N - 2 * n) * poch(n, n) * (b + 2 * n + 1) * (a2 - a1 + n) * (a2 + b + n + 1)
                   / (poch(n + 1, n) * (a1 + b + 3 * n + 2) * poch(a2 + b + 3 * n + 1, 2))
                   * _ratio(G(-n, a2 - a1 - n, -2 * n + 1, a2 + b + n + 1),
                            G(-n, a2 - a1 - n, -2 * n, a2 + b + n + 2), f"a{6 * n + 2}"))
        vals[5] = ((n + 1) * (N - 2 * n - 1) * (b + 2 * n + 2) * (a1 - a2 + n + 1) * (a1 + b + 2 + n + N)
                   / ((2 * n + 1) * poch(a1 + b + 3 * n + 3, 2) * (a2 + b + 3 * n + 3))
                   * _ratio(G(-n, a2 - a1 - n, -2 * n, a2 + b + n + 2),
                            G(-n - 1, a2 - a1 - n - 1, -2 * n - 1, a2 + b + n + 2), f"a{6 * n + 5}"))
        vals[3] = ((2 * n + 1) * (b + 2 * n + 1) * (a1 + b + 2 * n + 2) * (a2 + b + 2 * n + 2)
                   / (poch(a1 + b + 3 * n + 2, 2) * (a2 + b + 3 * n + 2))
                   * _ratio(G(-n - 1, a2 - a1 - n - 1, -2 * n - 1, a2 + b + n + 2),
                            G(-n, a2 - a1 - n, -2 * n, a2 + b + n + 2), f"a{6 * n + 3}"))
        vals[6] = (2 * (n + 1) * (b + 2 * n + 2) * (a1 + b + 2 * n + 3) * (a2 + b + 2 * n + 3) * (a2 + b + 2 + n + N)
                   / ((a1 + b + 3 * n + 4) * poch(a2 + b + 3 * n + 3, 2) * (a2 + b + n + 2))
                   * _ratio(G(-n - 1, a2 - a1 - n - 1, -2 * n - 2, a2 + b + n + 3),
                            G(-n - 1, a2 - a1 - n - 1, -2 * n - 1, a2 + b + n + 2), f"a{6 * n + 6}"))
        for r, v in vals.items():
            if 6 * n + r <= count:
                out[6 * n + r] = v
        n += 1
    return out


def alt_position(kind: str, a: int, idx: int) -> int:
    """Position in the a-sequence of a chain entry, read in factor order.

    Entries are listed as U_{1,k}, L_{1,k+1}, L_{2,k+1} for k = 0, 1, ...;
    this is the ordering the oracle confirms.
    """
    if kind == "U":
        return 3 * idx + 1
    return 3 * (idx - 1) + 1 + a


def printed_alt_map(pos: int):
    """(kind, a, index) the printed notation block assigns to a position."""
    n, r = divmod(pos - 1, 6)
    r += 1
    table = {1: ("U", 1, 2 * n), 4: ("U", 1, 2 * n + 1), 2: ("L", 1, 2 * n),
             5: ("L", 1, 2 * n + 1), 3: ("L", 2, 2 * n), 6: ("L", 1, 2 * n + 1)}
    return table[r]


def hahn2_chain_alt(params: HahnParams, n_trunc: int) -> BidiagonalChain:
    if params.p != 2:
        raise ValueError("two weights required")
    return beta_limit_chain(_alt_chain, params, n_trunc)


def _alt_chain(params: HahnParams, n_trunc: int) -> BidiagonalChain:
    need = 3 * n_trunc
    seq = hahn2_alt_sequence(params, need)
    U = {k: seq[alt_position("U", 1, k)] for k in range(n_trunc)}
    L1 = {k: seq[alt_position("L", 1, k)] for k in range(1, n_trunc)}
    L2 = {k: seq[alt_position("L", 2, k)] for k in range(1, n_trunc)}
    return BidiagonalChain(n_trunc, 2, 1, {1: L1, 2: L2}, {1: U})


def hahn2_chain_alt_printed(params: HahnParams, n_trunc: int) -> BidiagonalChain:
    """The alternative sequence placed by the printed notation block (last write wins)."""
    seq = hahn2_alt_sequence(params, 6 * ((n_trunc + 1) // 2 + 1))
    chain = BidiagonalChain(n_trunc, 2, 1, {1: {}, 2: {}}, {1: {}})
    for pos in sorted(seq):
        kind, a, idx = printed_alt_map(pos)
        if idx >= n_trunc or (kind == "L" and idx < 1):
            continue
        (chain.U if kind == "U" else chain.L)[a][idx] = seq[pos]
    return chain


def lemma_sides(which: int, n: int, params: HahnParams, literal: bool = False) -> tuple[Fraction, Fraction]:
    """Both sides of the two 3F2 transformation identities tying the families of series together.

    Each identity comes from two expressions of A^{(1)}(0). The printed right
    sides carry 1/(a1+b+N+1); equating the two verified expressions gives
    (a1+b+N+2)_{n-1} and (a1+b+N+2)_n instead. ``literal`` keeps the printed factor.
    """
    a1, a2 = params.alphas
    b, N = params.beta, params.n_supp
    poch = pochhammer
    if n < 1:
        raise ValueError("identities are stated for n >= 1")
    if which == 1:
        lhs = (Fraction((-1) ** n * factorial(2 * n - 2), factorial(n - 1)) * poch(a2 + b + n + 1, 2 * n - 1)
               / poch(a1 - a2 - n + 1, 2 * n - 1)
               * pfq_unit([-n + 1, -N, a2 - a1 - n + 1], [-2 * n + 2, a2 + b + n + 1]))
        rhs = (poch(a2 + b + 2 * n, n) / ((a1 + b + N + 1) * poch(a2 - a1, n))
               * pfq_unit([-n + 1, a1 + b + 2 * n, a1 - a2 - n + 1], [a1 - a2 + 1, a1 + b + N + 2]))
        if not literal:
            rhs *= pochhammer(a1 + b + N + 1, n)
    elif which == 2:
        lhs = (Fraction((-1) ** n * factorial(2 * n - 1), factorial(n - 1)) * poch(a2 + b + n + 1, 2 * n)
               / poch(a1 - a2 - n + 1, 2 * n)
               * pfq_unit([-n, -N, a2 - a1 - n], [-2 * n + 1, a2 + b + n + 1]))
        rhs = (poch(a2 + b + 2 * n + 1, n) / ((a1 + b + N + 1) * poch(a2 - a1, n))
               * pfq_unit([-n, a1 + b + 2 * n + 1, a1 - a2 - n + 1], [a1 - a2 + 1, a1 + b + N + 2]))
        if not literal:
            rhs *= pochhammer(a1 + b + N + 1, n + 1)
    else:
        raise ValueError("which must be 1 or 2")
    return lhs, rhs


# -- derived closed forms (any p) ---------------------------------------------

def tau_A_closed(a: int, n: int, params: HahnParams) -> Fraction:
    return det_small([[A0_seq(i, n + a - 1 - c, params) for c in range(a)] for i in range(1, a + 1)])


def U_from_values(k: int, params: HahnParams) -> Fraction:
    return _ratio(-B0_seq(k + 1, params), B0_seq(k, params), f"U1,{k}")


def L_from_values(a: int, k: int, params: HahnParams) -> Fraction:
    """L_{a,k} = -tau_{a-1,k+1} tau_{a,k-1} / (tau_{a-1,k} tau_{a,k}), k >= 1."""
    num = -tau_A_closed(a - 1, k + 1, params) * tau_A_closed(a, k - 1, params)
    den = tau_A_closed(a - 1, k, params) * tau_A_closed(a, k, params)
    return _ratio(num, den, f"L{a},{k}")


def hahn_chain_from_values(params: HahnParams, n_trunc: int) -> BidiagonalChain:
    """Entries from the closed-form values at 0 through the tau-ratio formulas."""
    U = {n: U_from_values(n, params) for n in range(n_trunc)}
    L = {a: {k: L_from_values(a, k, params) for k in range(1, n_trunc)} for a in range(1, params.p + 1)}
    return BidiagonalChain(n_trunc, params.p, 1, L, {1: U})


def recurrence_table(params: HahnParams, n_trunc: int) -> dict:
    """{(j, n): b^j_n} for every entry inside the n_trunc x n_trunc band."""
    return {(j, n): hahn_recurrence_coeff(j, n, params)
            for n in range(n_trunc) for j in range(params.p + 1) if n - j >= 0}


def hahn_tau_bridge(params: HahnParams, n_max: int) -> list:
    """Identities linking taus, values at 0 and recurrence coefficients.

    Returns (label, passed) pairs, n = 0..n_max. Two weights: the product
    identity both as printed and normalized by its n = 0 value, and the L_2
    reduction. Three weights: the L_3 reduction as it follows from the lowest
    subdiagonal, and as printed (minus sign, U_{1,n-1}).
    """
    p = params.p
    if p not in (2, 3):
        raise ValueError("bridge identities are stated for two or three weights")
    out = []
    if p == 2:
        lhs0 = -tau_A_closed(2, 0, params)
        for n in range(n_max + 1):
            prod = ONE
            for k in range(2, n + 2):
                prod *= hahn_recurrence_coeff(2, k, params)
            lhs = (-1) ** (n + 1) * prod * tau_A_closed(2, n, params)
            out.append((f"product identity as printed n={n}", lhs == B0_seq(n, params)))
            out.append((f"product identity normalized n={n}", lhs * B0_seq(0, params) == B0_seq(n, params) * lhs0))
            red = (hahn_recurrence_coeff(2, n + 2, params) * A0_seq(1, n + 2, params) / A0_seq(1, n + 1, params)
                   * B0_seq(n, params) / B0_seq(n + 1, params))
            out.append((f"L2 reduction n={n}", red == L_from_values(2, n + 1, params)))
    else:
        for n in range(n_max + 1):
            ratio = tau_A_closed(2, n + 2, params) / tau_A_closed(2, n + 1, params)
            b3 = hahn_recurrence_coeff(3, n + 3, params)
            out.append((f"L3 reduction n={n}", b3 / U_from_values(n, params) * ratio == L_from_values(3, n + 1, params)))
            if n >= 1:
                printed = -b3 / U_from_values(n - 1, params) * ratio
                out.append((f"L3 reduction as printed n={n}", printed == L_from_values(3, n + 1, params)))
    return out


def hahn3_chain(params: HahnParams, n_trunc: int) -> BidiagonalChain:
    from .hahn3 import hahn3_chain as closed
    return closed(params, n_trunc)
