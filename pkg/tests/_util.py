"""Shared builders and independent oracles for the test suite."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from medianshape.chain import Chain, path_chain, shortest_edge_path
from medianshape.complex import SimplicialComplex, build_grid_2d


def jittered_grid(nx, ny, seed, amount=0.15, width=1.0, height=1.0):
    """A 2D grid whose vertices are randomly displaced; same topology as build_grid_2d."""
    base = build_grid_2d(nx, ny, width, height)
    rng = np.random.default_rng(seed)
    h = min(width / nx, height / ny)
    verts = base.vertices + rng.uniform(-amount * h, amount * h, base.vertices.shape)
    tris = [base.oriented(2, j) for j in range(base.count(2))]
    return SimplicialComplex(verts, {2: tris}, complete_closure=True)


def fan_complex(k=6, seed=None):
    """k triangles around a centre vertex (k+1 vertices, 2k edges)."""
    rng = np.random.default_rng(seed)
    verts = [(0.0, 0.0)]
    for i in range(k):
        r = 1.0 if seed is None else rng.uniform(0.8, 1.2)
        a = 2 * math.pi * i / k
        verts.append((r * math.cos(a), r * math.sin(a)))
    tris = [(0, 1 + i, 1 + (i + 1) % k) for i in range(k)]
    return SimplicialComplex(verts, {2: tris}, complete_closure=True)


def single_triangle():
    return SimplicialComplex([(0, 0), (1, 0), (0, 1)], {2: [(0, 1, 2)]}, complete_closure=True)


def random_chain(K, p, rng, density=0.5, bound=1):
    n = K.count(p)
    coeffs = rng.integers(-bound, bound + 1, n) * (rng.random(n) < density)
    return Chain(K, p, coeffs)


def random_walk_chain(K, rng, start, end, n_waypoints=2):
    """Edge path start -> random waypoints -> end."""
    stops = [start] + [int(v) for v in rng.integers(0, K.count(0), n_waypoints)] + [end]
    walk = [stops[0]]
    for a, b in zip(stops[:-1], stops[1:]):
        walk += shortest_edge_path(K, a, b)[1:]
    return path_chain(K, walk)


# LP oracle --------------------------------------------------------------------

def _solve_square(M, rhs):
    """Exact solve of a square system; None when singular."""
    n = len(M)
    a = [list(map(Fraction, row)) + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col] / a[col][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def basis_enumeration_optimum(c, A, b):
    """Minimum of c.x over all basic feasible solutions, or None if there are none."""
    m, n = len(A), len(c)
    best = None
    for cols in itertools.combinations(range(n), m):
        sub = [[A[i][j] for j in cols] for i in range(m)]
        xb = _solve_square(sub, b)
        if xb is None or any(v < 0 for v in xb):
            continue
        value = sum(Fraction(c[j]) * v for j, v in zip(cols, xb))
        if best is None or value < best:
            best = value
    return best


# edge-disjoint paths oracle ---------------------------------------------------

def simple_paths(G, u, v):
    """All vertex-simple u-v paths as tuples of edge indices."""
    adj = {x: [] for x in range(G.n_vertices)}
    for e, (a, b, _) in enumerate(G.edges):
        if a != b:
            adj[a].append((b, e))
            adj[b].append((a, e))
    out = []

    def walk(x, seen, edges):
        if x == v:
            out.append(tuple(edges))
            return
        for y, e in adj[x]:
            if y not in seen:
                walk(y, seen | {y}, edges + [e])

    walk(u, {u}, [])
    return out


def brute_force_disjoint_paths(G, u, v):
    paths = [frozenset(p) for p in simple_paths(G, u, v)]
    best = 0

    def grow(start, used, count):
        nonlocal best
        best = max(best, count)
        for i in range(start, len(paths)):
            if not paths[i] & used:
                grow(i + 1, used | paths[i], count + 1)

    grow(0, frozenset(), 0)
    return best
