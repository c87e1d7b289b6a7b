"""Discrete matrices of measures, monomial/shift matrices, moment matrices
and Christoffel perturbations."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import ONE, ZERO, RMatrix, fmt, rat


@dataclass(frozen=True)
class DiscreteMeasureMatrix:
    """A q x p matrix of measures with finite support.

    ``support`` is a tuple of ``(node, weight)`` pairs, weight a q x p RMatrix.
    """

    q: int
    p: int
    support: tuple

    def __post_init__(self):
        nodes = [x for x, _ in self.support]
        if len(set(nodes)) != len(nodes):
            raise ValueError("support nodes must be pairwise distinct")
        for _, w in self.support:
            if w.shape != (self.q, self.p):
                raise ValueError(f"weight of shape {w.shape}, expected {(self.q, self.p)}")

    @classmethod
    def build(cls, q: int, p: int, points: Sequence) -> "DiscreteMeasureMatrix":
        sup = []
        for x, w in points:
            w = w if isinstance(w, RMatrix) else RMatrix(w if isinstance(w[0], (list, tuple)) else [w])
            sup.append((rat(x), w))
        return cls(q, p, tuple(sup))

    @property
    def nodes(self) -> list[Fraction]:
        return [x for x, _ in self.support]

    def to_json(self) -> dict:
        return {"q": self.q, "p": self.p,
                "support": [{"node": fmt(x), "weight": w.to_json()} for x, w in self.support]}

    @classmethod
    def from_json(cls, obj: dict) -> "DiscreteMeasureMatrix":
        q, p = int(obj["q"]), int(obj["p"])
        pts = [(Fraction(s["node"]), RMatrix.from_json(s["weight"])) for s in obj["support"]]
        return cls(q, p, tuple(pts))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def load_measure(path) -> DiscreteMeasureMatrix:
    with open(path) as fh:
        return DiscreteMeasureMatrix.from_json(json.load(fh))


def step_split(n: int, r: int) -> tuple[int, int]:
    """n = r*m + j  ->  (m, j)."""
    return divmod(n, r)


def monomial_matrix(r: int, N: int, x) -> RMatrix:
    """Truncated monomial matrix, N x r: row r*m+j carries x**m in column j."""
    x = rat(x)
    return RMatrix.from_fn(N, r, lambda n, j: x ** (n // r) if n % r == j else 0)


def xblock(r: int, s: int, x) -> RMatrix:
    """The r x r block [[0, I_{r-s}], [x I_s, 0]]."""
    if not 0 <= s <= r:
        raise ValueError("need 0 <= s <= r")
    x = rat(x)

    def entry(i, j):
        if i < r - s:
            return ONE if j == s + i else ZERO
        return x if j == i - (r - s) else ZERO

    return RMatrix.from_fn(r, r, entry)


def shift_block(r: int, N: int) -> RMatrix:
    """Bordered shift, N x (N+r): ones at (i, i+r)."""
    return RMatrix.from_fn(N, N + r, lambda i, j: 1 if j == i + r else 0)


def basic_shift(N: int) -> RMatrix:
    """Single step shift N x (N+1)."""
    return shift_block(1, N)


def moment_matrix(mu: DiscreteMeasureMatrix, N: int, M: int) -> RMatrix:
    q, p = mu.q, mu.p
    acc = [[ZERO] * M for _ in range(N)]
    for x, w in mu.support:
        if not any(v for r in w.data for v in r):
            continue
        maxpow = (N - 1) // q + (M - 1) // p if N and M else 0
        pw = [ONE]
        for _ in range(maxpow):
            pw.append(pw[-1] * x)
        for n in range(N):
            m, j = divmod(n, q)
            wr = w.data[j]
            row = acc[n]
            for c in range(M):
                m2, i = divmod(c, p)
                v = wr[i]
                if v:
                    row[c] += pw[m + m2] * v
    return RMatrix(acc)


def hankel_check(mu: DiscreteMeasureMatrix, N: int, M: int, moments=None) -> bool:
    """Shift symmetry of the moment matrix.

    ``moments`` optionally overrides the (N+q) x (M+p) moment matrix so that a
    corrupted matrix can be fed in.
    """
    q, p = mu.q, mu.p
    big = moments if moments is not None else moment_matrix(mu, N + q, M + p)
    lhs = shift_block(q, N) @ big.block(0, N + q, 0, M)
    rhs = big.block(0, N, 0, M + p) @ shift_block(p, M).T
    return lhs == rhs


def spectral_check(r: int, N: int, x, monomials=None) -> bool:
    """Shifting the monomial matrix multiplies it by x. ``monomials`` overrides the (N+r) x r matrix."""
    big = monomials if monomials is not None else monomial_matrix(r, N + r, x)
    return shift_block(r, N) @ big == monomial_matrix(r, N, x).scale(rat(x))


def christoffel_perturb(mu: DiscreteMeasureMatrix, n: int, m: int) -> DiscreteMeasureMatrix:
    """Left-multiply each weight by xblock(q,1)^n and right-multiply by its p-analogue^m transposed."""
    if n < 0 or m < 0:
        raise ValueError("perturbation orders must be nonnegative")
    out = []
    for x, w in mu.support:
        left = _xblock_power(mu.q, n, x)
        right = _xblock_power(mu.p, m, x)
        out.append((x, left @ w @ right.T))
    return DiscreteMeasureMatrix(mu.q, mu.p, tuple(out))


def _xblock_power(r: int, k: int, x) -> RMatrix:
    # xblock(r,1)^k = x^(k//r) * xblock(r, k % r)
    full, rest = divmod(k, r)
    return xblock(r, rest, x).scale(rat(x) ** full)


def scale_by_node(mu: DiscreteMeasureMatrix) -> DiscreteMeasureMatrix:
    return DiscreteMeasureMatrix(mu.q, mu.p, tuple((x, w.scale(x)) for x, w in mu.support))


def integrate(mu: DiscreteMeasureMatrix, left, right) -> RMatrix:
    """Finite-sum pairing  sum_k left(x_k) @ W_k @ right(x_k).

    ``left`` and ``right`` are callables returning RMatrix values at a node.
    """
    total = None
    for x, w in mu.support:
        term = left(x) @ w @ right(x)
        total = term if total is None else total + term
    if total is None:
        raise ValueError("empty support")
    return total
