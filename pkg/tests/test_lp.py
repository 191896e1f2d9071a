from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from medianshape.lp import (INFEASIBLE, OPTIMAL, UNBOUNDED, LPSolution, StandardFormLP,
                            is_integral, rationalize, solve_lp)

from _util import basis_enumeration_optimum


def check_certificate(lp, sol):
    assert sol.status == OPTIMAL
    assert all(v == 0 for v in lp.residual(sol.x))
    assert all(v >= 0 for v in sol.x)
    assert sol.objective == sum(c * x for c, x in zip(lp.c, sol.x))


def test_trivial_equality():
    lp = StandardFormLP.from_dense([1], [[1]], [1])
    sol = solve_lp(lp)
    assert sol.x == [1] and sol.objective == 1
    check_certificate(lp, sol)


def test_unbounded():
    lp = StandardFormLP.from_dense([-1, 0], [[1, -1]], [0])
    assert solve_lp(lp).status == UNBOUNDED


def test_infeasible():
    lp = StandardFormLP.from_dense([1, 1], [[1, 1]], [-1])
    assert solve_lp(lp).status == INFEASIBLE
    lp = StandardFormLP.from_dense([0, 0], [[1, 0], [1, 0]], [1, 2])
    assert solve_lp(lp).status == INFEASIBLE


def test_redundant_rows():
    lp = StandardFormLP.from_dense([1, 2, 0], [[1, 1, 1], [2, 2, 2]], [3, 6])
    sol = solve_lp(lp)
    check_certificate(lp, sol)
    assert sol.objective == 0


def test_beale_cycling_example_terminates():
    # cycles under the textbook largest-coefficient rule; Bland's rule must finish
    q = Fraction
    c = [0, 0, 0, q(-3, 4), 20, q(-1, 2), 6]
    A = [[1, 0, 0, q(1, 4), -8, -1, 9],
         [0, 1, 0, q(1, 2), -12, q(-1, 2), 3],
         [0, 0, 1, 0, 0, 1, 0]]
    lp = StandardFormLP.from_dense(c, A, [0, 0, 1])
    sol = solve_lp(lp, max_steps=1000)
    check_certificate(lp, sol)
    assert sol.objective == q(-5, 4)


def test_validation():
    with pytest.raises(ValueError):
        StandardFormLP([1], [{0: 1}, {0: 1}], [1], 1)
    with pytest.raises(ValueError):
        StandardFormLP([1], [{3: 1}], [1], 1)


def random_lp(rng, m, n, feasible=True):
    A = rng.integers(-3, 4, size=(m, n))
    if feasible:
        x0 = rng.integers(0, 3, size=n) * (rng.random(n) < 0.6)
        b = A @ x0
    else:
        b = rng.integers(-5, 6, size=m)
    c = rng.integers(-2, 6, size=n)
    return c.tolist(), A.tolist(), b.tolist()


def test_random_lps_against_basis_enumeration():
    rng = np.random.default_rng(12345)
    optimal = 0
    trials = 0
    while optimal < 20:
        trials += 1
        m = int(rng.integers(2, 4))
        n = int(rng.integers(m + 2, 9))
        c, A, b = random_lp(rng, m, n, feasible=trials % 4 != 0)
        if np.linalg.matrix_rank(np.array(A)) < m:
            continue
        lp = StandardFormLP.from_dense(c, A, b)
        sol = solve_lp(lp)
        oracle = basis_enumeration_optimum(c, A, b)
        if oracle is None:
            assert sol.status == INFEASIBLE
            continue
        if sol.status == UNBOUNDED:
            # a bounded LP attains its minimum at a vertex; unbounded ones go below every vertex
            ray_lp = StandardFormLP.from_dense(c, A + [c], b + [oracle - 1])
            assert solve_lp(ray_lp).status == OPTIMAL
            continue
        check_certificate(lp, sol)
        assert sol.objective == oracle
        optimal += 1
    assert trials < 200


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_degenerate_instances_terminate(seed):
    # many zero right-hand sides make most bases degenerate
    rng = np.random.default_rng(seed)
    m, n = int(rng.integers(2, 5)), int(rng.integers(5, 9))
    A = rng.integers(-2, 3, size=(m, n))
    b = np.zeros(m, dtype=int)
    b[0] = int(rng.integers(0, 2))
    A[0] = np.abs(A[0])
    c = rng.integers(-2, 3, size=n)
    lp = StandardFormLP.from_dense(c.tolist(), A.tolist(), b.tolist())
    sol = solve_lp(lp, max_steps=5000)
    if sol.status == OPTIMAL:
        check_certificate(lp, sol)
        if np.linalg.matrix_rank(A) == m:
            assert sol.objective == basis_enumeration_optimum(c.tolist(), A.tolist(), b.tolist())


def test_determinism():
    rng = np.random.default_rng(7)
    c, A, b = random_lp(rng, 3, 8)
    lp = StandardFormLP.from_dense(c, A, b)
    s1, s2 = solve_lp(lp), solve_lp(lp)
    assert (s1.status, s1.objective, s1.x, s1.basis) == (s2.status, s2.objective, s2.x, s2.basis)


def test_is_integral():
    assert is_integral(LPSolution(OPTIMAL, [Fraction(1), Fraction(0), Fraction(3)], Fraction(4)))
    assert not is_integral(LPSolution(OPTIMAL, [Fraction(1, 2), Fraction(1, 2)], Fraction(1)))
    with pytest.raises(ValueError):
        is_integral(LPSolution(UNBOUNDED))


def test_fractional_vertex_detected():
    # the only feasible point is (1/2, 1/2)
    lp = StandardFormLP.from_dense([1, 1], [[1, 1], [1, -1]], [1, 0])
    sol = solve_lp(lp)
    assert sol.x == [Fraction(1, 2), Fraction(1, 2)]
    assert not is_integral(sol)


def test_rationalize_examples():
    assert rationalize(0.5, 12) == Fraction(1, 2)
    assert rationalize(1 / 3, 12) == Fraction(333333333333, 10 ** 12)
    assert rationalize(0.0) == 0
    assert rationalize(Fraction(2, 7)) == Fraction(2, 7)
    assert rationalize(-2.5e-7, 3) == Fraction(-25, 10 ** 8)
    for bad in (float("nan"), float("inf")):
        with pytest.raises(ValueError):
            rationalize(bad)


@given(v=st.floats(allow_nan=False, allow_infinity=False, min_value=-1e200, max_value=1e200),
       sig=st.integers(1, 17))
def test_rationalize_round_trip(v, sig):
    q = rationalize(v, sig)
    assert abs(q - Fraction(v)) <= Fraction(10) ** (1 - sig) * abs(Fraction(v))
