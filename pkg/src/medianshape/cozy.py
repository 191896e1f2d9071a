"""Edge-coloured regular multigraphs: cozy and comfortable graphs, spines, knitting.

A k-cozy graph is connected and k-regular, with a proper k-edge-colouring (a
1-factorisation). It is k-comfortable if every vertex has a partner joined to it by
k edge-disjoint paths. Colours are 1..k and vertices 0..n-1.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class EdgeColoredGraph:
    n_vertices: int
    edges: tuple[tuple[int, int, int], ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v), int(c)) for u, v, c in self.edges))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


def _components(n: int, edges: Iterable[tuple[int, int, int]]) -> list[int]:
    label = list(range(n))

    def find(x):
        while label[x] != x:
            label[x] = label[label[x]]
            x = label[x]
        return x

    for u, v, *_ in edges:
        label[find(u)] = find(v)
    return [find(x) for x in range(n)]


def is_connected(G: EdgeColoredGraph) -> bool:
    if G.n_vertices == 0:
        return False
    return len(set(_components(G.n_vertices, G.edges))) == 1


def cozy_defects(G: EdgeColoredGraph) -> list[str]:
    """Reasons why G is not k-cozy; empty when it is."""
    problems = []
    n = G.n_vertices
    for u, v, c in G.edges:
        if not (0 <= u < n and 0 <= v < n):
            return [f"edge ({u}, {v}) has an endpoint out of range"]
        if u == v:
            problems.append(f"loop at vertex {u}")
        if not 1 <= c <= G.k:
            problems.append(f"colour {c} outside 1..{G.k}")
    seen: dict[tuple[int, int], int] = {}
    for u, v, c in G.edges:
        for x in (u, v):
            if (x, c) in seen:
                problems.append(f"vertex {x} has two edges of colour {c}")
            seen[(x, c)] = 1
    bad_deg = [x for x, d in enumerate(G.degrees()) if d != G.k]
    if bad_deg:
        problems.append(f"vertex {bad_deg[0]} does not have degree {G.k}")
    if not is_connected(G):
        problems.append("graph is disconnected")
    return problems


def is_cozy(G: EdgeColoredGraph) -> bool:
    return not cozy_defects(G)


class _UnitFlow:
    """Max flow with unit capacities by BFS augmenting paths.

    Undirected edges become a pair of mutually reverse arcs of capacity 1 each.
    """

    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, a: int, b: int, undirected: bool = True):
        for x, y, c in ((a, b, 1), (b, a, 1 if undirected else 0)):
            self.head[x].append(len(self.to))
            self.to.append(y)
            self.cap.append(c)

    def max_flow(self, s: int, t: int, limit: int | None = None) -> int:
        flow = 0
        while limit is None or flow < limit:
            parent = [-1] * self.n
            parent[s] = -2
            queue = deque([s])
            while queue and parent[t] == -1:
                x = queue.popleft()
                for arc in self.head[x]:
                    y = self.to[arc]
                    if self.cap[arc] > 0 and parent[y] == -1:
                        parent[y] = arc
                        queue.append(y)
            if parent[t] == -1:
                break
            y = t
            while y != s:
                arc = parent[y]
                self.cap[arc] -= 1
                self.cap[arc ^ 1] += 1
                y = self.to[arc ^ 1]
            flow += 1
        return flow

    def reachable(self, s: int) -> set[int]:
        seen = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for arc in self.head[x]:
                y = self.to[arc]
                if self.cap[arc] > 0 and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen


def _network(G: EdgeColoredGraph, extra: int = 0) -> _UnitFlow:
    net = _UnitFlow(G.n_vertices + extra)
    for u, v, _ in G.edges:
        if u != v:
            net.add_edge(u, v)
    return net


def max_edge_disjoint_paths(G: EdgeColoredGraph, u: int, v: int, limit: int | None = None) -> int:
    """Maximum number of pairwise edge-disjoint u-v paths (colours ignored).

    ``limit`` stops the search once that many paths are found.
    """
    if u == v:
        raise ValueError("endpoints must differ")
    for x in (u, v):
        if not 0 <= x < G.n_vertices:
            raise IndexError(f"vertex {x} out of range")
    return _network(G).max_flow(u, v, limit)


def multiset_disjoint_paths(G: EdgeColoredGraph, sources: Sequence[int], sinks: Sequence[int]) -> int:
    """Edge-disjoint paths joining two vertex multisets, multiplicities respected.

    A super source feeds every entry of ``sources`` and a super sink drains every
    entry of ``sinks``, one arc per occurrence.
    """
    n = G.n_vertices
    net = _network(G, extra=2)
    s, t = n, n + 1
    for x in sources:
        net.add_edge(s, x, undirected=False)
    for x in sinks:
        net.add_edge(x, t, undirected=False)
    return net.max_flow(s, t)


def is_comfortable(G: EdgeColoredGraph, k: int | None = None) -> bool:
    k = G.k if k is None else k
    n = G.n_vertices
    if n < 2:
        return k == 0
    for v in range(n):
        if not any(max_edge_disjoint_paths(G, v, w, limit=k) >= k for w in range(n) if w != v):
            return False
    return True


def edge_connectivity(G: EdgeColoredGraph) -> int:
    """Global minimum edge cut, from n-1 max-flow computations out of vertex 0."""
    if not is_connected(G):
        raise ValueError("edge connectivity needs a connected graph")
    if G.n_vertices < 2:
        return 0
    return min(max_edge_disjoint_paths(G, 0, v) for v in range(1, G.n_vertices))


def min_edge_cut(G: EdgeColoredGraph) -> tuple[int, set[int]]:
    """A global minimum edge cut as ``(size, vertex set of the side holding 0)``."""
    if not is_connected(G) or G.n_vertices < 2:
        raise ValueError("minimum cut needs a connected graph with two or more vertices")
    best = None
    for v in range(1, G.n_vertices):
        net = _network(G)
        value = net.max_flow(0, v)
        if best is None or value < best[0]:
            best = (value, net.reachable(0))
    return best


def spines_and_ribs(G: EdgeColoredGraph, U: Iterable[int]) -> tuple[list[tuple[int, int, int]], list[tuple[int, int, int]]]:
    """Edges with exactly one endpoint in U (spines) and with both in U (ribs)."""
    U = set(U)
    for x in U:
        if not 0 <= x < G.n_vertices:
            raise IndexError(f"vertex {x} out of range")
    spines, ribs = [], []
    for e in G.edges:
        inside = (e[0] in U) + (e[1] in U)
        if inside == 1:
            spines.append(e)
        elif inside == 2:
            ribs.append(e)
    return spines, ribs


def knit(G: EdgeColoredGraph, U: Iterable[int]) -> EdgeColoredGraph:
    """Induced subgraph on U with its spines closed up by same-coloured special edges.

    Spine endpoints of each colour are paired in ascending vertex order. Vertices of
    the result are U relabelled in ascending order.
    """
    U = sorted(set(U))
    spines, ribs = spines_and_ribs(G, U)
    if len(spines) >= G.k:
        raise ValueError(f"U has {len(spines)} spines; knitting needs fewer than {G.k}")
    relabel = {x: i for i, x in enumerate(U)}
    edges = [(relabel[u], relabel[v], c) for u, v, c in ribs]
    ends: dict[int, list[int]] = {}
    for u, v, c in spines:
        ends.setdefault(c, []).append(u if u in relabel else v)
    for c in sorted(ends):
        pts = sorted(ends[c])
        if len(pts) % 2:
            raise ValueError(f"odd number of colour-{c} spines; G is not cozy")
        for a, b in zip(pts[::2], pts[1::2]):
            edges.append((relabel[a], relabel[b], c))
    H = EdgeColoredGraph(len(U), tuple(edges), G.k)
    if not is_connected(H):
        raise ValueError("knitting of U is disconnected")
    return H


def random_cozy(k: int, n_vertices: int, seed: int, max_tries: int = 1000) -> EdgeColoredGraph:
    """Union of k random perfect matchings (matching c gets colour c), resampled until connected."""
    if k < 1 or n_vertices < 2 or n_vertices % 2:
        raise ValueError("need k >= 1 and an even number of vertices >= 2")
    if k == 1 and n_vertices != 2:
        raise ValueError("the only connected 1-regular graph is K2")
    rng = random.Random(seed)
    for _ in range(max_tries):
        edges = []
        for c in range(1, k + 1):
            perm = list(range(n_vertices))
            rng.shuffle(perm)
            edges += [(min(a, b), max(a, b), c) for a, b in zip(perm[::2], perm[1::2])]
        G = EdgeColoredGraph(n_vertices, tuple(edges), k)
        if is_connected(G):
            return G
    raise RuntimeError(f"no connected sample in {max_tries} tries")


def join_across(G1: EdgeColoredGraph, G2: EdgeColoredGraph, colors: Sequence[int]) -> EdgeColoredGraph:
    """Join two k-cozy graphs into one whose cut between them has 2*len(colors) edges.

    For each listed colour, one edge of that colour is taken from each graph and the
    two are cross-connected. Vertices of G2 are shifted by ``G1.n_vertices``.
    """
    if G1.k != G2.k:
        raise ValueError("graphs must have the same degree")
    off = G1.n_vertices
    e1 = list(G1.edges)
    e2 = [(u + off, v + off, c) for u, v, c in G2.edges]
    cross = []
    for c in colors:
        i = next(i for i, e in enumerate(e1) if e[2] == c)
        j = next(j for j, e in enumerate(e2) if e[2] == c)
        (a1, a2, _), (b1, b2, _) = e1.pop(i), e2.pop(j)
        cross += [(a1, b1, c), (a2, b2, c)]
    return EdgeColoredGraph(off + G2.n_vertices, tuple(e1 + e2 + cross), G1.k)
