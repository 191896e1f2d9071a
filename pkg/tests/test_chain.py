import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from medianshape.chain import (Chain, UnreachableError, apply_boundary, exact_mass, mass,
                               nearest_vertex, path_chain, shares_boundary,
                               shortest_edge_path, snap_polyline)
from medianshape.complex import SimplicialComplex, build_grid_2d, build_grid_3d

from _util import jittered_grid, random_chain

GRID = build_grid_2d(4, 4)


def test_chain_validation():
    with pytest.raises(ValueError):
        Chain(GRID, 1, [1, 2])
    with pytest.raises(ValueError):
        Chain(GRID, 3, [])
    c = Chain.from_dict(GRID, 1, {0: 2, 3: -1})
    assert c.items() == [(0, 2), (3, -1)]
    assert c.support() == {0, 3}
    with pytest.raises(ValueError):
        c.coeffs[0] = 5


def test_chain_arithmetic():
    a = Chain.from_dict(GRID, 1, {0: 1, 1: 2})
    b = Chain.from_dict(GRID, 1, {1: -2, 4: 1})
    assert (a + b).items() == [(0, 1), (4, 1)]
    assert (a - a).is_zero()
    assert -a == a * -1
    with pytest.raises(ValueError):
        a + Chain.zeros(GRID, 2)


def test_boundary_of_single_edge():
    K = SimplicialComplex([(0, 0), (1, 0)], {1: [(0, 1)]})
    d = apply_boundary(K, Chain(K, 1, [1]))
    assert d.items() == [(0, -1), (1, 1)]


def test_boundary_of_triangle_cycle_is_zero():
    K = SimplicialComplex([(0, 0), (1, 0), (0, 1)], {2: [(0, 1, 2)]}, complete_closure=True)
    assert apply_boundary(K, path_chain(K, [0, 1, 2, 0])).is_zero()


def test_boundary_of_zero_chain_rejected():
    with pytest.raises(ValueError):
        apply_boundary(GRID, Chain.zeros(GRID, 0))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_boundary_is_linear_and_squares_to_zero(seed):
    rng = np.random.default_rng(seed)
    K = build_grid_3d(2, 1, 1) if seed % 2 else GRID
    a, b = random_chain(K, 2, rng, bound=3), random_chain(K, 2, rng, bound=3)
    assert apply_boundary(K, a + b) == apply_boundary(K, a) + apply_boundary(K, b)
    assert apply_boundary(K, apply_boundary(K, a)).is_zero()


def test_mass_examples():
    K = SimplicialComplex([(0, 0), (1, 0)], {1: [(0, 1)]})
    assert mass(K, Chain.zeros(K, 1)) == 0
    assert mass(K, Chain(K, 1, [2])) == 2.0


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), k=st.integers(-5, 5))
def test_mass_against_resummation_and_homogeneous(seed, k):
    rng = np.random.default_rng(seed)
    K = jittered_grid(3, 3, seed % 1000)
    c = random_chain(K, 1, rng, bound=4)
    oracle = 0.0
    for i, coeff in enumerate(c.coeffs):
        oracle += abs(int(coeff)) * float(np.linalg.norm(np.subtract(*K.vertices[list(K.simplices[1][i])])))
    assert mass(K, c) == pytest.approx(oracle, rel=1e-12, abs=1e-12)
    assert mass(K, c * k) == pytest.approx(abs(k) * mass(K, c), rel=1e-12, abs=1e-12)
    assert exact_mass(K, c * k) == abs(k) * exact_mass(K, c)


def test_nearest_vertex_ties_pick_smallest():
    assert nearest_vertex(GRID, (0.125, 0.0)) == 0
    assert nearest_vertex(GRID, (1.0, 1.0)) == GRID.count(0) - 1


def test_snap_same_vertex_is_zero():
    assert snap_polyline(GRID, [(0.01, 0.0), (0.0, 0.02)]).is_zero()


def test_snap_along_existing_path():
    pts = [(0, 0), (0.25, 0), (0.5, 0), (0.5, 0.25)]
    c = snap_polyline(GRID, pts)
    assert len(c.items()) == 3
    assert all(coeff in (1, -1) for _, coeff in c.items())
    walk = [nearest_vertex(GRID, p) for p in pts]
    assert c == path_chain(GRID, walk)


def test_snap_back_and_forth_adds_coefficients():
    c = snap_polyline(GRID, [(0, 0), (0.25, 0), (0, 0), (0.25, 0)])
    assert [abs(v) for _, v in c.items()] == [1]
    c = snap_polyline(GRID, [(0, 0), (0.25, 0), (0.5, 0), (0.25, 0), (0.5, 0)])
    assert sorted(abs(v) for _, v in c.items()) == [1, 1]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.floats(0, 1), st.floats(0, 1)), min_size=2, max_size=6))
def test_snap_boundary_is_endpoints(points):
    c = snap_polyline(GRID, points)
    first, last = nearest_vertex(GRID, points[0]), nearest_vertex(GRID, points[-1])
    expect = Chain.zeros(GRID, 0)
    if first != last:
        expect = Chain.from_dict(GRID, 0, {first: -1, last: 1})
    assert apply_boundary(GRID, c) == expect


def test_shortest_paths_against_scipy():
    K = jittered_grid(5, 4, seed=3)
    u, v = zip(*K.simplices[1])
    n = K.count(0)
    W = coo_matrix((K.volumes[1], (u, v)), shape=(n, n))
    dist = dijkstra(W, directed=False)
    rng = np.random.default_rng(0)
    for _ in range(20):
        a, b = (int(x) for x in rng.integers(0, n, 2))
        path = shortest_edge_path(K, a, b)
        assert path[0] == a and path[-1] == b
        length = sum(K.volumes[1][K.index(1, e)] for e in zip(path[:-1], path[1:]))
        assert length == pytest.approx(dist[a, b], rel=1e-9, abs=1e-12)


def test_snap_unreachable():
    K = SimplicialComplex([(0, 0), (1, 0), (5, 0), (6, 0)], {1: [(0, 1), (2, 3)]})
    with pytest.raises(UnreachableError):
        snap_polyline(K, [(0, 0), (6, 0)])


def test_shares_boundary():
    a = snap_polyline(GRID, [(0, 0.5), (0.5, 0.75), (1, 0.5)])
    b = snap_polyline(GRID, [(0, 0.5), (0.5, 0.25), (1, 0.5)])
    c = snap_polyline(GRID, [(0, 0.5), (1, 0.75)])
    assert shares_boundary(GRID, a, a)
    assert shares_boundary(GRID, a, b)
    assert not shares_boundary(GRID, a, c)
    with pytest.raises(ValueError):
        shares_boundary(GRID, a, Chain.zeros(GRID, 2))
