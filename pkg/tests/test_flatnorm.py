from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from medianshape.chain import Chain, apply_boundary, exact_mass, mass
from medianshape.complex import build_grid_2d, build_grid_3d, build_path
from medianshape.flatnorm import (brute_force_flat_norm, decomposition_value, flat_norm,
                                  flat_norm_lp)
from medianshape.lp import rationalize

from _util import fan_complex, jittered_grid, random_chain, single_triangle

TRI = single_triangle()
RIM = apply_boundary(TRI, Chain(TRI, 2, [1]))
PERIMETER = exact_mass(TRI, RIM)
AREA = TRI.rational_volumes(2)[0]


def one_triangle_oracle(lam):
    """Closed-form minimum over s in {-1, 0, 1} on one triangle."""
    lam = rationalize(lam)
    w = TRI.rational_volumes(1)
    best = None
    for s in (-1, 0, 1):
        x = RIM.coeffs - s * apply_boundary(TRI, Chain(TRI, 2, [1])).coeffs
        value = sum(wi * abs(int(xi)) for wi, xi in zip(w, x)) + lam * AREA * abs(s)
        best = value if best is None else min(best, value)
    return best


def check_decomposition(K, t, d):
    assert d.x == t - apply_boundary(K, d.s)
    assert d.value == decomposition_value(K, d.x, d.s, d.lam)


def test_zero_chain():
    K = build_grid_2d(2, 2)
    d = flat_norm(K, Chain.zeros(K, 1), 0.5)
    assert d.x.is_zero() and d.s.is_zero() and d.value == 0
    assert brute_force_flat_norm(K, Chain.zeros(K, 1), 0.5).value == 0


def test_triangle_rim_keeps_curve_for_large_lambda():
    lam = 20.0  # perimeter / area = 2 (2 + sqrt 2) ~ 6.83
    d = flat_norm(TRI, RIM, lam)
    assert d.x == RIM and d.s.is_zero()
    assert d.value == PERIMETER == one_triangle_oracle(lam)
    assert brute_force_flat_norm(TRI, RIM, lam).value == d.value


def test_triangle_rim_fills_for_small_lambda():
    lam = 2.0
    d = flat_norm(TRI, RIM, lam)
    assert d.x.is_zero() and d.s.items() == [(0, 1)]
    assert d.value == rationalize(lam) * AREA == one_triangle_oracle(lam)
    assert brute_force_flat_norm(TRI, RIM, lam).value == d.value


def test_lp_layout():
    K = build_grid_2d(2, 1)
    t = random_chain(K, 1, np.random.default_rng(0))
    lp = flat_norm_lp(K, t, 0.1)
    m, n = K.count(1), K.count(2)
    assert lp.n_vars == 2 * m + 2 * n and lp.n_cons == m
    assert lp.c[:m] == lp.c[m:2 * m] == K.rational_volumes(1)


def test_dimension_checks():
    P = build_path(3)
    with pytest.raises(ValueError):
        flat_norm(P, Chain.zeros(P, 1), 1.0)  # no 2-simplices
    with pytest.raises(ValueError):
        flat_norm(build_grid_2d(1, 1), Chain.zeros(P, 0), 1.0)  # other complex


def test_zero_chains_on_path():
    # 0-chains with 1-fillings: two points at distance d cost min(2, lam * d)
    P = build_path(6)
    t = Chain.from_dict(P, 0, {1: 1, 4: -1})
    assert flat_norm(P, t, 1.0).value == 2
    assert flat_norm(P, t, 0.5).value == Fraction(3, 2)


def test_fill_3d():
    K = build_grid_3d(1, 1, 1)
    s = Chain(K, 3, np.ones(K.count(3), dtype=np.int64))
    t = apply_boundary(K, s)
    d = flat_norm(K, t, 0.01)
    check_decomposition(K, t, d)
    assert d.x.is_zero()
    assert d.value == pytest.approx(0.01, rel=1e-9)


SMALL = [("tri", single_triangle), ("grid11", lambda: jittered_grid(1, 1, seed=0)),
         ("grid21", lambda: jittered_grid(2, 1, seed=1)), ("grid22", lambda: build_grid_2d(2, 2)),
         ("fan6", lambda: fan_complex(6, seed=2)), ("grid31", lambda: jittered_grid(3, 1, seed=3))]


@pytest.mark.parametrize("name,make", SMALL, ids=[s[0] for s in SMALL])
def test_oracle_equivalence(name, make):
    K = make()
    assert K.count(2) <= 8
    rng = np.random.default_rng(len(name))
    for lam in (0.3, 1.0, 4.0, 12.0):
        for _ in range(3):
            t = random_chain(K, 1, rng, density=0.6, bound=2)
            d = flat_norm(K, t, lam)
            check_decomposition(K, t, d)
            brute = brute_force_flat_norm(K, t, lam, coeff_bound=2)
            assert brute.value >= d.value
            if int(np.abs(d.s.coeffs).max(initial=0)) <= 2:
                assert brute.value == d.value


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), l1=st.floats(0.01, 10), l2=st.floats(0.01, 10))
def test_properties(seed, l1, l2):
    rng = np.random.default_rng(seed)
    K = jittered_grid(2, 2, seed % 97)
    t = random_chain(K, 1, rng, density=0.5, bound=2)
    lo, hi = sorted((l1, l2))
    d_lo, d_hi = flat_norm(K, t, lo), flat_norm(K, t, hi)
    assert d_lo.value <= d_hi.value
    assert d_hi.value <= exact_mass(K, t)
    assert float(d_hi.value) <= mass(K, t) * (1 + 1e-9)
    assert flat_norm(K, -t, hi).value == d_hi.value


def test_brute_force_guard():
    K = build_grid_2d(4, 4)
    with pytest.raises(OverflowError):
        brute_force_flat_norm(K, Chain.zeros(K, 1), 1.0, coeff_bound=1)
