"""Simplicial median shapes as linear programs.

The weighted, mass-regularised median of input p-chains t_1..t_N minimises

    mu * sum_i w_i |t_i| + sum_h alpha_h (sum_i w_i |r_hi| + lam * sum_j v_j |s_hj|)

subject to ``t - t_h = r_h + B s_h`` for every h. With mu = 0 and unit weights this
is the plain median.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .chain import Chain, apply_boundary
from .complex import SimplicialComplex, boundary_matrix
from .flatnorm import (BRUTE_FORCE_LIMIT, _Enumerator, _screen_tol, brute_force_flat_norm,
                       flat_norm)
from .lp import (OPTIMAL, FractionalOptimum, LPSolution, StandardFormLP, is_integral,
                 rationalize, solve_lp)

DEFAULT_LAMBDA = 1e-3
DEFAULT_MU = 1e-5
MEDIAN_SEARCH_LIMIT = 10 ** 6


@dataclass
class MedianProblem:
    complex: SimplicialComplex
    inputs: list[Chain]
    lam: float | Fraction = DEFAULT_LAMBDA
    mu: float | Fraction = DEFAULT_MU
    alpha: Sequence | None = None
    sig_digits: int = 12

    def __post_init__(self):
        self.inputs = list(self.inputs)
        if not self.inputs:
            raise ValueError("need at least one input chain")
        p = self.inputs[0].dim
        for t in self.inputs:
            if t.complex is not self.complex:
                raise ValueError("inputs must live on the problem's complex")
            if t.dim != p:
                raise ValueError("inputs must share one dimension")
        if p + 1 > self.complex.dim:
            raise ValueError(f"median of {p}-chains needs {p + 1}-simplices")
        if self.alpha is None:
            self.alpha = [1] * len(self.inputs)
        self.alpha = list(self.alpha)
        if len(self.alpha) != len(self.inputs):
            raise ValueError("alpha needs one weight per input")
        if self.lam < 0 or self.mu < 0 or any(a < 0 for a in self.alpha):
            raise ValueError("lambda, mu and alpha must be nonnegative")

    @property
    def p(self) -> int:
        return self.inputs[0].dim

    @property
    def n_inputs(self) -> int:
        return len(self.inputs)

    def rational_params(self) -> tuple[Fraction, Fraction, list[Fraction]]:
        q = self.sig_digits
        return (rationalize(self.lam, q), rationalize(self.mu, q),
                [rationalize(a, q) for a in self.alpha])


@dataclass
class MedianSolution:
    t_hat: Chain
    per_input: list[tuple[Chain, Chain]]
    objective: Fraction
    integral: bool = True
    lp: LPSolution | None = field(default=None, repr=False)


def assemble_median_lp(prob: MedianProblem) -> StandardFormLP:
    """Standard-form LP with variables ``[t+ t- | r1+ r1- s1+ s1- | ... ]``.

    Block row h reads ``(t+ - t-) - (r_h+ - r_h-) - B (s_h+ - s_h-) = t_h``.
    """
    K = prob.complex
    B = boundary_matrix(K, prob.p)
    m, n = B.rows, B.cols
    N = prob.n_inputs
    lam, mu, alpha = prob.rational_params()
    w = K.rational_volumes(prob.p, prob.sig_digits)
    v = K.rational_volumes(prob.p + 1, prob.sig_digits)

    columns = [{h * m + i: 1 for h in range(N)} for i in range(m)]
    columns += [{h * m + i: -1 for h in range(N)} for i in range(m)]
    c = [mu * wi for wi in w] * 2
    bcols = [B.column(j) for j in range(n)]
    for h in range(N):
        off = h * m
        columns += [{off + i: -1} for i in range(m)]
        columns += [{off + i: 1} for i in range(m)]
        columns += [{off + i: -a for i, a in col.items()} for col in bcols]
        columns += [{off + i: a for i, a in col.items()} for col in bcols]
        c += [alpha[h] * wi for wi in w] * 2
        c += [alpha[h] * lam * vj for vj in v] * 2
    b = [Fraction(int(x)) for t in prob.inputs for x in t.coeffs]
    return StandardFormLP(c, columns, b, N * m)


def _split(x: Sequence[Fraction], start: int, size: int) -> list[Fraction]:
    return [x[start + i] - x[start + size + i] for i in range(size)]


def solve_median(prob: MedianProblem) -> MedianSolution:
    """Exact median via the LP relaxation; raises FractionalOptimum if it is not integral."""
    K = prob.complex
    lp = assemble_median_lp(prob)
    sol = solve_lp(lp)
    # t = t_1, r_h = t_1 - t_h, s_h = 0 is always feasible and c >= 0
    assert sol.status == OPTIMAL, sol.status
    if not is_integral(sol):
        raise FractionalOptimum("fractional median optimum", sol)
    m, n = K.count(prob.p), K.count(prob.p + 1)
    x = [int(v) for v in sol.x]
    t_hat = Chain(K, prob.p, _split(x, 0, m))
    per_input = []
    for h in range(prob.n_inputs):
        off = 2 * m + h * (2 * m + 2 * n)
        r = Chain(K, prob.p, _split(x, off, m))
        s = Chain(K, prob.p + 1, _split(x, off + 2 * m, n))
        per_input.append((r, s))
    return MedianSolution(t_hat, per_input, sol.objective, True, sol)


def evaluate_objective(prob: MedianProblem, t_hat: Chain, per_input) -> Fraction:
    """Exact objective value; checks ``t_hat - t_h = r_h + B s_h`` for every h."""
    K = prob.complex
    lam, mu, alpha = prob.rational_params()
    w = K.rational_volumes(prob.p, prob.sig_digits)
    v = K.rational_volumes(prob.p + 1, prob.sig_digits)
    if len(per_input) != prob.n_inputs:
        raise ValueError("need one (r, s) pair per input")
    total = mu * sum((w[i] * abs(c) for i, c in t_hat.items()), Fraction(0))
    for h, (t_h, (r, s)) in enumerate(zip(prob.inputs, per_input)):
        if t_hat - t_h != r + apply_boundary(K, s):
            raise ValueError(f"homology constraint violated for input {h}")
        dist = sum((w[i] * abs(c) for i, c in r.items()), Fraction(0))
        dist += lam * sum((v[j] * abs(c) for j, c in s.items()), Fraction(0))
        total += alpha[h] * dist
    return total


def brute_force_median(prob: MedianProblem, coeff_bound: int = 1, s_bound: int | None = None,
                       support: Sequence[int] | None = None) -> MedianSolution:
    """Exhaustive median over a bounded family of candidates.

    Candidates t_hat have coefficients in ``[-coeff_bound, coeff_bound]`` on ``support``
    (default: the union of the input supports) and zero elsewhere. Each distance is
    an exhaustive flat norm over (p+1)-chains bounded by ``s_bound``.
    """
    K = prob.complex
    s_bound = coeff_bound if s_bound is None else s_bound
    if support is None:
        support = sorted(set().union(*(t.support() for t in prob.inputs)))
    support = list(support)
    lam, mu, alpha = prob.rational_params()
    B = boundary_matrix(K, prob.p).toarray()
    m, n = B.shape
    w = np.array([float(x) for x in K.rational_volumes(prob.p, prob.sig_digits)])
    v = np.array([float(x) for x in K.rational_volumes(prob.p + 1, prob.sig_digits)])
    cand = _Enumerator(len(support), coeff_bound, MEDIAN_SEARCH_LIMIT)
    fills = _Enumerator(n, s_bound, BRUTE_FORCE_LIMIT)
    S = np.concatenate([chunk for _, chunk in fills.chunks()])
    BS = S @ B.T
    fill_cost = float(lam) * (np.abs(S) @ v)
    inputs = np.array([t.coeffs for t in prob.inputs])
    alpha_f = [float(a) for a in alpha]

    vals = np.empty(cand.total)
    block = max(1, 2 ** 22 // max(1, len(S) * m))
    for start, coeffs in cand.chunks():
        T = np.zeros((len(coeffs), m), dtype=np.int64)
        T[:, support] = coeffs
        out = float(mu) * (np.abs(T) @ w)
        for h in range(prob.n_inputs):
            if alpha_f[h] == 0:
                continue
            U = T - inputs[h]
            for lo in range(0, len(U), block):
                X = U[lo:lo + block, None, :] - BS[None, :, :]
                d = (np.abs(X) @ w + fill_cost[None, :]).min(axis=1)
                out[lo:lo + block] += alpha_f[h] * d
        vals[start:start + len(coeffs)] = out
    best = vals.min()
    near = np.nonzero(vals <= best + _screen_tol(best))[0]
    result = None
    for k in near:
        coeffs = np.zeros(m, dtype=np.int64)
        coeffs[support] = cand.decode(int(k))
        t_hat = Chain(K, prob.p, coeffs)
        per_input = []
        for t_h in prob.inputs:
            d = brute_force_flat_norm(K, t_hat - t_h, lam, s_bound, prob.sig_digits)
            per_input.append((d.x, d.s))
        value = evaluate_objective(prob, t_hat, per_input)
        if result is None or value < result.objective:
            result = MedianSolution(t_hat, per_input, value, True)
    return result


class EnvelopeError(ValueError):
    """Some pair of inputs has a difference that no small-scale flat norm fills."""


def envelope_support(prob: MedianProblem, max_halvings: int = 40) -> set[int]:
    """Union of the fillings of all pairwise input differences.

    For each pair the scale starts at the problem's lambda and is halved until the
    flat-norm decomposition of the difference has no residual part.
    """
    K = prob.complex
    lam, _, _ = prob.rational_params()
    for a, b in itertools.combinations(prob.inputs, 2):
        if prob.p >= 1 and apply_boundary(K, a) != apply_boundary(K, b):
            raise ValueError("envelope needs inputs with a shared boundary")
    result: set[int] = set()
    for a, b in itertools.combinations(prob.inputs, 2):
        diff = a - b
        if diff.is_zero():
            continue
        scale = lam
        for _ in range(max_halvings + 1):
            d = flat_norm(K, diff, scale, prob.sig_digits)
            if d.x.is_zero():
                result |= d.s.support()
                break
            scale /= 2
        else:
            raise EnvelopeError("input difference cannot be filled")
    return result


def envelope_closure(prob: MedianProblem, support: set[int] | None = None) -> set[int]:
    """p-simplices on envelope simplices, plus p-simplices every input carries identically."""
    K = prob.complex
    if support is None:
        support = envelope_support(prob)
    p = prob.p
    closure: set[int] = set()
    for j in support:
        simplex = K.simplices[p + 1][j]
        for pos in range(p + 2):
            closure.add(K.index(p, simplex[:pos] + simplex[pos + 1:]))
    first = prob.inputs[0]
    shared = {i for i, c in first.items() if all(t.coeffs[i] == c for t in prob.inputs)}
    return closure | shared


def envelope_violations(prob: MedianProblem, sol: MedianSolution,
                        support: set[int] | None = None) -> dict[int, set[int]]:
    """For each input h, the p-simplices where ``t_hat - t_h`` leaves the envelope closure."""
    closure = envelope_closure(prob, support)
    out = {}
    for h, t_h in enumerate(prob.inputs):
        bad = (sol.t_hat - t_h).support() - closure
        if bad:
            out[h] = bad
    return out


def interpolation_sweep(prob: MedianProblem, steps: int) -> list[tuple[tuple[Fraction, Fraction], MedianSolution]]:
    """Weighted medians of two inputs for ``alpha = (1 - k/steps, k/steps)``."""
    if prob.n_inputs != 2:
        raise ValueError("interpolation needs exactly two inputs")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    out = []
    for k in range(steps + 1):
        alpha = (1 - Fraction(k, steps), Fraction(k, steps))
        sub = MedianProblem(prob.complex, prob.inputs, prob.lam, prob.mu, alpha,
                            prob.sig_digits)
        out.append((alpha, solve_median(sub)))
    return out
