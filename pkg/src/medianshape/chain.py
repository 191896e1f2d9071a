"""Integer chains on a simplicial complex."""
from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .complex import SimplicialComplex, boundary_matrix


class UnreachableError(ValueError):
    """A polyline leg joins two vertices in different components of the 1-skeleton."""


class Chain:
    """An integer p-chain: one coefficient per p-simplex of ``complex``."""

    __slots__ = ("complex", "dim", "coeffs")

    def __init__(self, complex: SimplicialComplex, dim: int, coeffs):
        arr = np.array(coeffs, dtype=np.int64).reshape(-1)
        if not 0 <= dim <= complex.dim:
            raise ValueError(f"complex has no {dim}-simplices")
        if arr.shape[0] != complex.count(dim):
            raise ValueError(
                f"{dim}-chain needs {complex.count(dim)} coefficients, got {arr.shape[0]}")
        arr.setflags(write=False)
        self.complex = complex
        self.dim = dim
        self.coeffs = arr

    @classmethod
    def zeros(cls, K: SimplicialComplex, dim: int) -> "Chain":
        return cls(K, dim, np.zeros(K.count(dim), dtype=np.int64))

    @classmethod
    def from_dict(cls, K: SimplicialComplex, dim: int, items: Mapping[int, int]) -> "Chain":
        arr = np.zeros(K.count(dim), dtype=np.int64)
        for i, c in items.items():
            arr[i] += c
        return cls(K, dim, arr)

    def items(self) -> list[tuple[int, int]]:
        nz = np.nonzero(self.coeffs)[0]
        return [(int(i), int(self.coeffs[i])) for i in nz]

    def support(self) -> set[int]:
        return {int(i) for i in np.nonzero(self.coeffs)[0]}

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def _check(self, other: "Chain"):
        if other.complex is not self.complex or other.dim != self.dim:
            raise ValueError("chains live on different complexes or dimensions")

    def __add__(self, other: "Chain") -> "Chain":
        self._check(other)
        return Chain(self.complex, self.dim, self.coeffs + other.coeffs)

    def __sub__(self, other: "Chain") -> "Chain":
        self._check(other)
        return Chain(self.complex, self.dim, self.coeffs - other.coeffs)

    def __neg__(self) -> "Chain":
        return Chain(self.complex, self.dim, -self.coeffs)

    def __mul__(self, k: int) -> "Chain":
        return Chain(self.complex, self.dim, int(k) * self.coeffs)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return (other.complex is self.complex and other.dim == self.dim
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((id(self.complex), self.dim, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        return f"Chain(dim={self.dim}, {dict(self.items())})"


def apply_boundary(K: SimplicialComplex, c: Chain) -> Chain:
    if c.dim < 1:
        raise ValueError("a 0-chain has no boundary")
    if c.complex is not K:
        raise ValueError("chain lives on a different complex")
    B = boundary_matrix(K, c.dim - 1)
    return Chain(K, c.dim - 1, B.matrix @ c.coeffs)


def mass(K: SimplicialComplex, c: Chain) -> float:
    return float(np.dot(K.volumes[c.dim], np.abs(c.coeffs)))


def exact_mass(K: SimplicialComplex, c: Chain, sig_digits: int = 12) -> Fraction:
    """Mass with volumes rounded to ``sig_digits`` digits, as used by the LPs."""
    w = K.rational_volumes(c.dim, sig_digits)
    return sum((w[i] * abs(v) for i, v in c.items()), Fraction(0))


def shares_boundary(K: SimplicialComplex, a: Chain, b: Chain) -> bool:
    if a.dim != b.dim:
        raise ValueError("chains have different dimensions")
    return apply_boundary(K, a) == apply_boundary(K, b)


def nearest_vertex(K: SimplicialComplex, point) -> int:
    pt = np.zeros(K.dim_ambient)
    given = np.asarray(point, dtype=float).reshape(-1)
    pt[:min(len(given), K.dim_ambient)] = given[:K.dim_ambient]
    d2 = ((K.vertices - pt) ** 2).sum(axis=1)
    return int(np.argmin(d2))  # argmin returns the first, i.e. smallest, index on ties


def _edge_graph(K: SimplicialComplex, sig_digits: int):
    lengths = K.rational_volumes(1, sig_digits)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(K.count(0))]
    for e, (u, v) in enumerate(K.simplices[1]):
        adj[u].append((v, e))
        adj[v].append((u, e))
    return adj, lengths


def shortest_edge_path(K: SimplicialComplex, source: int, target: int,
                       sig_digits: int = 12) -> list[int]:
    """Vertex sequence of a shortest edge path, lengths compared exactly.

    Among equal-length paths, each vertex keeps the smallest-index predecessor.
    """
    if source == target:
        return [source]
    adj, lengths = _edge_graph(K, sig_digits)
    dist = {source: Fraction(0)}
    pred: dict[int, int] = {}
    done = set()
    heap = [(Fraction(0), source)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == target:
            break
        for v, e in adj[u]:
            if v in done:
                continue
            nd = d + lengths[e]
            old = dist.get(v)
            if old is None or nd < old or (nd == old and u < pred[v]):
                dist[v] = nd
                pred[v] = u
                heapq.heappush(heap, (nd, v))
    if target not in done:
        raise UnreachableError(f"vertex {target} is unreachable from {source}")
    path = [target]
    while path[-1] != source:
        path.append(pred[path[-1]])
    return path[::-1]


def path_chain(K: SimplicialComplex, vertices: Sequence[int]) -> Chain:
    """The 1-chain traversing consecutive edges of a vertex walk."""
    coeffs = np.zeros(K.count(1), dtype=np.int64)
    for u, v in zip(vertices[:-1], vertices[1:]):
        e = K.index(1, (u, v))
        tail, _ = K.oriented(1, e)
        coeffs[e] += 1 if tail == u else -1
    return Chain(K, 1, coeffs)


def snap_polyline(K: SimplicialComplex, points, sig_digits: int = 12) -> Chain:
    """Snap a polyline to the 1-skeleton of K.

    Each point goes to its nearest vertex and consecutive vertices are joined by a
    shortest edge path. Coefficients of repeated edges add up.
    """
    if K.dim < 1:
        raise ValueError("complex has no edges")
    if len(points) < 2:
        raise ValueError("a polyline needs at least two points")
    snapped = [nearest_vertex(K, p) for p in points]
    walk = [snapped[0]]
    for a, b in zip(snapped[:-1], snapped[1:]):
        walk.extend(shortest_edge_path(K, a, b, sig_digits)[1:])
    return path_chain(K, walk)
