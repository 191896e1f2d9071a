"""Simplicial multiscale flat norm.

For a p-chain t the flat norm at scale lambda minimises
``sum_i w_i |x_i| + lambda * sum_j v_j |s_j|`` over integer (p+1)-chains s with
``x = t - B s``, where w and v are the p- and (p+1)-volumes and B the boundary matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chain import Chain
from .complex import SimplicialComplex, boundary_matrix
from .lp import FractionalOptimum, StandardFormLP, is_integral, rationalize, solve_lp, OPTIMAL

BRUTE_FORCE_LIMIT = 10 ** 7
_CHUNK = 1 << 14


@dataclass(frozen=True)
class FlatNormDecomposition:
    x: Chain
    s: Chain
    value: Fraction
    lam: Fraction


def _check(K: SimplicialComplex, t: Chain):
    if t.complex is not K:
        raise ValueError("chain lives on a different complex")
    if t.dim + 1 > K.dim:
        raise ValueError(f"flat norm of a {t.dim}-chain needs {t.dim + 1}-simplices")


def decomposition_value(K, x: Chain, s: Chain, lam: Fraction, sig_digits: int = 12) -> Fraction:
    w = K.rational_volumes(x.dim, sig_digits)
    v = K.rational_volumes(s.dim, sig_digits)
    value = sum((w[i] * abs(c) for i, c in x.items()), Fraction(0))
    value += lam * sum((v[j] * abs(c) for j, c in s.items()), Fraction(0))
    return value


def flat_norm_lp(K: SimplicialComplex, t: Chain, lam, sig_digits: int = 12) -> StandardFormLP:
    """Variables ``[x+ x- s+ s-]``, constraints ``x+ - x- + B(s+ - s-) = t``."""
    _check(K, t)
    lam = rationalize(lam, sig_digits)
    B = boundary_matrix(K, t.dim)
    m, n = B.rows, B.cols
    w = K.rational_volumes(t.dim, sig_digits)
    v = K.rational_volumes(t.dim + 1, sig_digits)
    columns = [{i: 1} for i in range(m)] + [{i: -1} for i in range(m)]
    bcols = [B.column(j) for j in range(n)]
    columns += bcols + [{i: -a for i, a in col.items()} for col in bcols]
    c = list(w) + list(w) + [lam * vj for vj in v] * 2
    b = [Fraction(int(ti)) for ti in t.coeffs]
    return StandardFormLP(c, columns, b, m)


def flat_norm(K: SimplicialComplex, t: Chain, lam, sig_digits: int = 12) -> FlatNormDecomposition:
    """Optimal integer flat-norm decomposition via the LP relaxation.

    Raises FractionalOptimum if the vertex optimum found is not integral.
    """
    lp = flat_norm_lp(K, t, lam, sig_digits)
    sol = solve_lp(lp)
    assert sol.status == OPTIMAL, sol.status  # x = t, s = 0 is feasible and c >= 0
    if not is_integral(sol):
        raise FractionalOptimum("fractional flat norm optimum", sol)
    m = lp.n_cons
    n = (lp.n_vars - 2 * m) // 2
    xv = [int(sol.x[i] - sol.x[m + i]) for i in range(m)]
    sv = [int(sol.x[2 * m + j] - sol.x[2 * m + n + j]) for j in range(n)]
    x = Chain(K, t.dim, xv)
    s = Chain(K, t.dim + 1, sv)
    return FlatNormDecomposition(x, s, sol.objective, rationalize(lam, sig_digits))


class _Enumerator:
    """All integer (p+1)-chains with coefficients in ``[-bound, bound]``, in chunks."""

    def __init__(self, n: int, bound: int, limit: int):
        self.n = n
        self.bound = bound
        self.base = 2 * bound + 1
        self.total = self.base ** n
        if self.total > limit:
            raise OverflowError(f"search space {self.total} exceeds {limit}")
        self.powers = self.base ** np.arange(n, dtype=np.int64)

    def chunks(self):
        for start in range(0, self.total, _CHUNK):
            ks = np.arange(start, min(start + _CHUNK, self.total), dtype=np.int64)
            yield start, (ks[:, None] // self.powers) % self.base - self.bound

    def decode(self, k: int) -> np.ndarray:
        return (k // self.powers) % self.base - self.bound


def _screen_tol(best: float) -> float:
    return 1e-9 * (1.0 + abs(best))


def brute_force_flat_norm(K: SimplicialComplex, t: Chain, lam, coeff_bound: int = 1,
                          sig_digits: int = 12) -> FlatNormDecomposition:
    """Exhaustive minimum over all s with ``|s_j| <= coeff_bound``.

    Candidates are screened in floating point and the near-optimal ones are compared
    exactly, so the returned value is the exact minimum over the bounded family.
    """
    _check(K, t)
    lam_q = rationalize(lam, sig_digits)
    B = boundary_matrix(K, t.dim).toarray()
    n = B.shape[1]
    w = np.array([float(x) for x in K.rational_volumes(t.dim, sig_digits)])
    v = np.array([float(x) for x in K.rational_volumes(t.dim + 1, sig_digits)])
    enum = _Enumerator(n, coeff_bound, BRUTE_FORCE_LIMIT)
    tv = t.coeffs
    lam_f = float(lam_q)
    vals = np.empty(enum.total)
    for start, S in enum.chunks():
        X = tv[None, :] - S @ B.T
        vals[start:start + len(S)] = np.abs(X) @ w + lam_f * (np.abs(S) @ v)
    best = vals.min()
    near = np.nonzero(vals <= best + _screen_tol(best))[0]
    result = None
    for k in near:
        s = Chain(K, t.dim + 1, enum.decode(int(k)))
        x = Chain(K, t.dim, tv - B @ s.coeffs)
        value = decomposition_value(K, x, s, lam_q, sig_digits)
        if result is None or value < result.value:
            result = FlatNormDecomposition(x, s, value, lam_q)
    return result
