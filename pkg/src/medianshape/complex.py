"""Finite simplicial complexes: construction, validation, boundary matrices, volumes.

Simplices are stored as sorted vertex tuples. Each simplex additionally carries an
orientation sign relative to its sorted order (+1 means the sorted order is the
orientation). Lower-dimensional faces produced by closure are always +1; builders and
the mesh loader set top-dimensional orientations explicitly.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
import scipy.sparse as sp


def permutation_parity(seq: Sequence[int]) -> int:
    """Return +1 for an even permutation of ``sorted(seq)``, -1 for an odd one."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def simplex_volume(coords) -> float:
    """q-dimensional volume of the simplex spanned by q+1 points.

    Uses the Gram determinant, ``sqrt(det(G^T G)) / q!`` where the columns of ``G``
    are the edge vectors from the first point. A single point has volume 1.
    """
    pts = np.asarray(coords, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    q = pts.shape[0] - 1
    if q == 0:
        return 1.0
    edges = (pts[1:] - pts[0]).T
    gram = edges.T @ edges
    det = float(np.linalg.det(gram))
    return math.sqrt(max(det, 0.0)) / math.factorial(q)


@dataclass(frozen=True)
class BoundaryMatrix:
    """Signed incidence between p-simplices (rows) and (p+1)-simplices (columns)."""

    p: int
    matrix: sp.csc_matrix

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]

    @property
    def entries(self) -> dict[tuple[int, int], int]:
        coo = self.matrix.tocoo()
        return {(int(i), int(j)): int(v) for i, j, v in zip(coo.row, coo.col, coo.data)}

    def column(self, j: int) -> dict[int, int]:
        start, stop = self.matrix.indptr[j], self.matrix.indptr[j + 1]
        return {int(i): int(v) for i, v in
                zip(self.matrix.indices[start:stop], self.matrix.data[start:stop])}

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def __matmul__(self, other):
        return self.matrix @ other


class SimplicialComplex:
    """An immutable finite simplicial complex embedded in R^d.

    Parameters
    ----------
    vertices
        ``(n_vertices, d)`` coordinates.
    simplices
        Mapping ``q -> list of oriented vertex tuples`` for ``q >= 1``. Tuples may be
        given in any vertex order; the order's permutation parity becomes the
        simplex orientation.
    complete_closure
        Add missing faces instead of rejecting the input.
    """

    def __init__(self, vertices, simplices: Mapping[int, Sequence[Sequence[int]]],
                 complete_closure: bool = False):
        verts = np.array(vertices, dtype=float)
        if verts.ndim == 1:
            verts = verts[:, None]
        if verts.ndim != 2 or verts.shape[0] == 0:
            raise ValueError("vertices must be a non-empty (n, d) array")
        verts.setflags(write=False)
        self.vertices = verts
        nv = verts.shape[0]

        top = max([q for q, s in simplices.items() if len(s)] or [0])
        by_dim: list[dict[tuple, int]] = [dict() for _ in range(top + 1)]
        by_dim[0] = {(i,): 1 for i in range(nv)}
        for q in sorted(simplices):
            if q < 1:
                continue
            for simplex in simplices[q]:
                simplex = tuple(int(v) for v in simplex)
                if len(simplex) != q + 1:
                    raise ValueError(f"{q}-simplex {simplex} must have {q + 1} vertices")
                if len(set(simplex)) != len(simplex):
                    raise ValueError(f"repeated vertex in simplex {simplex}")
                if min(simplex) < 0 or max(simplex) >= nv:
                    raise ValueError(f"vertex index out of range in {simplex}")
                key = tuple(sorted(simplex))
                if key in by_dim[q]:
                    raise ValueError(f"duplicate {q}-simplex {key}")
                by_dim[q][key] = permutation_parity(simplex)

        for q in range(top, 1, -1):
            for simplex in list(by_dim[q]):
                for face in itertools.combinations(simplex, q):
                    if face not in by_dim[q - 1]:
                        if not complete_closure:
                            raise ValueError(f"face {face} of {simplex} is missing")
                        by_dim[q - 1][face] = 1

        self.simplices: list[list[tuple[int, ...]]] = []
        self.orientations: list[np.ndarray] = []
        self.volumes: list[np.ndarray] = []
        self._index: list[dict[tuple, int]] = []
        for q, table in enumerate(by_dim):
            keys = sorted(table)
            orient = np.array([table[k] for k in keys], dtype=np.int64)
            vols = np.array([simplex_volume(verts[list(k)]) for k in keys], dtype=float)
            if q > 0 and len(keys):
                scale = max(float(np.ptp(verts, axis=0).max()), 1.0)
                tiny = 1e-12 * scale ** q
                bad = np.nonzero(vols <= tiny)[0]
                if len(bad):
                    raise ValueError(f"degenerate {q}-simplex {keys[bad[0]]}")
            orient.setflags(write=False)
            vols.setflags(write=False)
            self.simplices.append(keys)
            self.orientations.append(orient)
            self.volumes.append(vols)
            self._index.append({k: i for i, k in enumerate(keys)})
        self._boundary_cache: dict[int, BoundaryMatrix] = {}
        self._rational_cache: dict[tuple[int, int], list[Fraction]] = {}

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    @property
    def dim_ambient(self) -> int:
        return self.vertices.shape[1]

    def count(self, q: int) -> int:
        return len(self.simplices[q]) if 0 <= q <= self.dim else 0

    def index(self, q: int, simplex: Sequence[int]) -> int:
        """Index of a q-simplex given by its vertices (any order)."""
        return self._index[q][tuple(sorted(simplex))]

    def oriented(self, q: int, i: int) -> tuple[int, ...]:
        """Vertex tuple of simplex ``i`` written in its orientation order."""
        s = self.simplices[q][i]
        if self.orientations[q][i] < 0:
            s = (s[1], s[0]) + s[2:]
        return s

    def rational_volumes(self, q: int, sig_digits: int = 12) -> list[Fraction]:
        """Volumes of the q-simplices rounded to ``sig_digits`` significant digits."""
        from .lp import rationalize

        key = (q, sig_digits)
        if key not in self._rational_cache:
            self._rational_cache[key] = [rationalize(float(v), sig_digits)
                                         for v in self.volumes[q]]
        return self._rational_cache[key]

    def faces_are_closed(self) -> bool:
        for q in range(2, self.dim + 1):
            for s in self.simplices[q]:
                for face in itertools.combinations(s, q):
                    if face not in self._index[q - 1]:
                        return False
        return True

    def __repr__(self) -> str:
        counts = ", ".join(str(len(s)) for s in self.simplices)
        return f"SimplicialComplex(dim={self.dim}, d={self.dim_ambient}, counts=[{counts}])"


def boundary_matrix(K: SimplicialComplex, p: int) -> BoundaryMatrix:
    """The (p+1)-boundary matrix of K: rows are p-simplices, columns (p+1)-simplices."""
    if not 0 <= p < K.dim:
        raise ValueError(f"p must satisfy 0 <= p < {K.dim}, got {p}")
    if p in K._boundary_cache:
        return K._boundary_cache[p]
    rows, cols, vals = [], [], []
    faces = K._index[p]
    face_orient = K.orientations[p]
    for j, simplex in enumerate(K.simplices[p + 1]):
        oj = int(K.orientations[p + 1][j])
        for pos in range(p + 2):
            face = simplex[:pos] + simplex[pos + 1:]
            i = faces[face]
            rows.append(i)
            cols.append(j)
            vals.append((-1) ** pos * oj * int(face_orient[i]))
    mat = sp.csc_matrix((np.array(vals, dtype=np.int64), (rows, cols)),
                        shape=(K.count(p), K.count(p + 1)))
    mat.sort_indices()
    bm = BoundaryMatrix(p, mat)
    K._boundary_cache[p] = bm
    return bm


def build_path(n_edges: int, spacing: float = 1.0) -> SimplicialComplex:
    """A 1-complex: ``n_edges`` collinear segments of equal length along the x-axis."""
    if n_edges < 1 or spacing <= 0:
        raise ValueError("need n_edges >= 1 and spacing > 0")
    verts = [(i * spacing,) for i in range(n_edges + 1)]
    return SimplicialComplex(verts, {1: [(i, i + 1) for i in range(n_edges)]})


def build_grid_2d(nx: int, ny: int, width: float = 1.0, height: float = 1.0) -> SimplicialComplex:
    """Triangulated rectangle with every cell cut along its lower-left/upper-right diagonal.

    Triangles are oriented counterclockwise.
    """
    if nx < 1 or ny < 1 or not width > 0 or not height > 0:
        raise ValueError("grid needs nx, ny >= 1 and positive width/height")
    xs = np.linspace(0.0, width, nx + 1)
    ys = np.linspace(0.0, height, ny + 1)
    verts = [(x, y) for y in ys for x in xs]

    def vid(i, j):
        return j * (nx + 1) + i

    tris = []
    for j in range(ny):
        for i in range(nx):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)
            tris.append((a, b, c))
            tris.append((a, c, d))
    return SimplicialComplex(verts, {2: tris}, complete_closure=True)


def build_grid_3d(nx: int, ny: int, nz: int, extents=(1.0, 1.0, 1.0)) -> SimplicialComplex:
    """Box split into cubes, each cube into 6 Kuhn tetrahedra sharing the main diagonal.

    Tetrahedra are positively oriented.
    """
    if min(nx, ny, nz) < 1 or min(extents) <= 0:
        raise ValueError("grid needs nx, ny, nz >= 1 and positive extents")
    n = (nx, ny, nz)
    axes = [np.linspace(0.0, extents[a], n[a] + 1) for a in range(3)]
    verts = [(axes[0][i], axes[1][j], axes[2][k])
             for k in range(nz + 1) for j in range(ny + 1) for i in range(nx + 1)]

    def vid(i, j, k):
        return i + (nx + 1) * (j + (ny + 1) * k)

    pts = np.array(verts)
    tets = []
    for k in range(nz):
        for j in range(ny):
            for i in range(nx):
                for perm in itertools.permutations(range(3)):
                    cur = [i, j, k]
                    tet = [vid(*cur)]
                    for axis in perm:
                        cur[axis] += 1
                        tet.append(vid(*cur))
                    edges = pts[tet[1:]] - pts[tet[0]]
                    if np.linalg.det(edges) < 0:
                        tet[1], tet[2] = tet[2], tet[1]
                    tets.append(tuple(tet))
    return SimplicialComplex(verts, {3: tets}, complete_closure=True)
