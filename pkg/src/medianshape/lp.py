"""Exact rational linear programming in standard form.

``min c.x  s.t.  A x = b, x >= 0`` is solved by a two-phase revised simplex method
over the rationals, pricing with Bland's rule. The basis inverse is kept in product
form (a list of eta columns) and rebuilt from scratch every so often.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Sequence

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

REFACTOR_EVERY = 100


class FractionalOptimum(Exception):
    """Raised when an LP optimum that should yield integer chains is fractional.

    ``solution`` holds the rational LP solution for inspection.
    """

    def __init__(self, message: str, solution: "LPSolution"):
        super().__init__(message)
        self.solution = solution


def rationalize(v, sig_digits: int = 12) -> Fraction:
    """Round ``v`` to ``sig_digits`` significant decimal digits and return it exactly.

    Ints and Fractions pass through unchanged.
    """
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return Fraction(v)
    v = float(v)
    if not math.isfinite(v):
        raise ValueError(f"cannot rationalize {v}")
    if v == 0.0:
        return Fraction(0)
    if sig_digits < 1:
        raise ValueError("sig_digits must be >= 1")
    return Fraction(Decimal(format(v, f".{sig_digits - 1}e")))


@dataclass
class StandardFormLP:
    """``min c.x s.t. A x = b, x >= 0`` with A stored column-wise as sparse dicts."""

    c: list[Fraction]
    columns: list[dict[int, Fraction]]
    b: list[Fraction]
    n_cons: int

    def __post_init__(self):
        if len(self.c) != len(self.columns):
            raise ValueError("c and A disagree on the number of variables")
        if len(self.b) != self.n_cons:
            raise ValueError("b and A disagree on the number of constraints")
        for col in self.columns:
            for i in col:
                if not 0 <= i < self.n_cons:
                    raise ValueError(f"row index {i} out of range")

    @property
    def n_vars(self) -> int:
        return len(self.c)

    @classmethod
    def from_dense(cls, c, A, b) -> "StandardFormLP":
        A = [list(row) for row in A]
        m = len(A)
        n = len(c)
        cols = [{i: Fraction(A[i][j]) for i in range(m) if A[i][j] != 0} for j in range(n)]
        return cls([Fraction(x) for x in c], cols, [Fraction(x) for x in b], m)

    def to_dense(self) -> list[list[Fraction]]:
        A = [[Fraction(0)] * self.n_vars for _ in range(self.n_cons)]
        for j, col in enumerate(self.columns):
            for i, a in col.items():
                A[i][j] = Fraction(a)
        return A

    def residual(self, x: Sequence[Fraction]) -> list[Fraction]:
        """``A x - b`` in exact arithmetic."""
        r = [-Fraction(bi) for bi in self.b]
        for j, xj in enumerate(x):
            if xj:
                for i, a in self.columns[j].items():
                    r[i] += a * xj
        return r


@dataclass
class LPSolution:
    status: str
    x: list[Fraction] | None = None
    objective: Fraction | None = None
    basis: list[int] = field(default_factory=list)
    steps: int = 0


class _RevisedSimplex:
    """One solve's worth of mutable simplex state. Not reusable."""

    def __init__(self, columns, b, m, max_steps):
        self.cols = columns
        self.m = m
        self.b = b
        self.max_steps = max_steps
        self.steps = 0
        self.etas: list[tuple[int, dict]] = []
        self.basis: list[int] = [-1] * m
        self.is_basic = [False] * len(columns)
        self.xb: list = [_Q(0)] * m

    # product-form solves -------------------------------------------------
    def ftran(self, vec: dict) -> dict:
        a = dict(vec)
        for r, eta in self.etas:
            t = a.get(r)
            if not t:
                continue
            for i, e in eta.items():
                if i == r:
                    a[r] = e * t
                else:
                    v = a.get(i, 0) + e * t
                    if v:
                        a[i] = v
                    else:
                        a.pop(i, None)
        return a

    def btran(self, vec: dict) -> dict:
        y = dict(vec)
        for r, eta in reversed(self.etas):
            s = 0
            if len(y) < len(eta):
                for i, yi in y.items():
                    e = eta.get(i)
                    if e:
                        s += yi * e
            else:
                for i, e in eta.items():
                    yi = y.get(i)
                    if yi:
                        s += yi * e
            if s:
                y[r] = s
            else:
                y.pop(r, None)
        return y

    @staticmethod
    def _eta(alpha: dict, r: int) -> dict:
        piv = alpha[r]
        eta = {i: -a / piv for i, a in alpha.items() if i != r}
        eta[r] = 1 / _Q(piv)
        return eta

    def reinvert(self):
        members = sorted((j for j in self.basis), key=lambda j: (len(self.cols[j]), j))
        self.etas = []
        assigned = [-1] * self.m
        for j in members:
            alpha = self.ftran(self.cols[j])
            r = None
            for i in sorted(alpha):
                if assigned[i] < 0:
                    a = alpha[i]
                    if r is None or (abs(a) == 1 and abs(alpha[r]) != 1):
                        r = i
                    if abs(a) == 1:
                        break
            if r is None:
                raise ArithmeticError("singular basis during reinversion")
            if alpha != {r: 1}:
                self.etas.append((r, self._eta(alpha, r)))
            assigned[r] = j
        self.basis = assigned
        xb = self.ftran({i: v for i, v in enumerate(self.b) if v})
        self.xb = [_Q(xb.get(i, 0)) for i in range(self.m)]
        self._fresh = len(self.etas)
        self._y = None  # row order changed; duals are recomputed on demand

    # iterations ----------------------------------------------------------
    def run(self, cost, allowed) -> str:
        self._fresh = len(self.etas)
        self._y = None
        cols = self.cols
        while True:
            self.steps += 1
            if self.max_steps is not None and self.steps > self.max_steps:
                raise RuntimeError(f"simplex exceeded {self.max_steps} steps")
            if self._y is None:
                self._y = self.btran({r: cost[j] for r, j in enumerate(self.basis) if cost[j]})
            y = self._y
            q = None
            is_basic = self.is_basic
            for j in range(len(cols)):
                if is_basic[j] or not allowed[j]:
                    continue
                d = cost[j]
                for i, a in cols[j].items():
                    yi = y.get(i)
                    if yi:
                        d -= yi * a
                if d < 0:
                    q, dq = j, d
                    break
            if q is None:
                return OPTIMAL
            alpha = self.ftran(cols[q])
            r = None
            best = None
            for i, a in alpha.items():
                if a > 0:
                    ratio = self.xb[i] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[i] < self.basis[r])):
                        best, r = ratio, i
            if r is None:
                return UNBOUNDED
            # duals follow the pivot: y += d_q / alpha_r * (row r of the old inverse)
            step = dq / alpha[r]
            for i, v in self.btran({r: 1}).items():
                yi = y.get(i, 0) + step * v
                if yi:
                    y[i] = yi
                else:
                    y.pop(i, None)
            self.pivot(q, r, alpha, best)

    def pivot(self, q, r, alpha, theta):
        if theta:
            for i, a in alpha.items():
                if i != r:
                    self.xb[i] -= theta * a
        self.xb[r] = _Q(theta)
        self.is_basic[self.basis[r]] = False
        self.is_basic[q] = True
        self.basis[r] = q
        self.etas.append((r, self._eta(alpha, r)))
        if len(self.etas) - self._fresh > REFACTOR_EVERY:
            self.reinvert()


def solve_lp(lp: StandardFormLP, max_steps: int | None = 10_000_000) -> LPSolution:
    """Solve a standard-form LP exactly.

    Returns a vertex optimum (with its basis) when one exists; infeasibility and
    unboundedness are reported through ``status``.
    """
    m, n = lp.n_cons, lp.n_vars
    flip = [Fraction(bi) < 0 for bi in lp.b]
    b = [_Q(-bi) if f else _Q(bi) for bi, f in zip(lp.b, flip)]
    cols = []
    for col in lp.columns:
        cols.append({i: (_Q(-a) if flip[i] else _Q(a)) for i, a in col.items() if a != 0})

    # Crash basis: a column with a single positive entry can start basic in its row.
    start = [-1] * m
    for j, col in enumerate(cols):
        if len(col) == 1:
            (i, a), = col.items()
            if a > 0 and start[i] < 0:
                start[i] = j
    n_art = 0
    for i in range(m):
        if start[i] < 0:
            cols.append({i: _Q(1)})
            start[i] = n + n_art
            n_art += 1
    total = n + n_art

    solver = _RevisedSimplex(cols, b, m, max_steps)
    solver.basis = start
    solver.is_basic = [False] * total
    for j in start:
        solver.is_basic[j] = True
    solver.reinvert()

    allowed = [True] * n + [False] * n_art
    if n_art:
        cost1 = [0] * n + [1] * n_art
        solver.run(cost1, allowed)
        infeas = sum((solver.xb[r] for r, j in enumerate(solver.basis) if j >= n), _Q(0))
        if infeas > 0:
            return LPSolution(INFEASIBLE, steps=solver.steps)
        _drive_out_artificials(solver, n)

    cost = [_Q(cj) for cj in lp.c] + [0] * n_art
    status = solver.run(cost, allowed)
    if status == UNBOUNDED:
        return LPSolution(UNBOUNDED, steps=solver.steps)
    x = [Fraction(0)] * n
    for r, j in enumerate(solver.basis):
        if j < n:
            x[j] = _to_fraction(solver.xb[r])
    objective = sum((Fraction(cj) * xj for cj, xj in zip(lp.c, x) if xj), Fraction(0))
    basis = sorted(j for j in solver.basis if j < n)
    return LPSolution(OPTIMAL, x, objective, basis, solver.steps)


def _drive_out_artificials(solver: _RevisedSimplex, n: int):
    """Pivot zero-level artificials out of the basis where possible.

    An artificial that cannot leave sits on a redundant row; its tableau row is zero
    over all original columns and stays zero, so it is harmless in phase two.
    """
    for r in range(solver.m):
        if solver.basis[r] < n:
            continue
        rho = solver.btran({r: 1})
        for j in range(n):
            if solver.is_basic[j]:
                continue
            if sum((rho.get(i, 0) * a for i, a in solver.cols[j].items()), 0):
                alpha = solver.ftran(solver.cols[j])
                solver.pivot(j, r, alpha, _Q(0))
                break


def _to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    return Fraction(int(v.numerator), int(v.denominator))


def is_integral(sol: LPSolution) -> bool:
    """Exact check that every coordinate of an optimal solution is an integer."""
    if sol.status != OPTIMAL:
        raise ValueError("integrality is only defined for optimal solutions")
    return all(Fraction(v).denominator == 1 for v in sol.x)
