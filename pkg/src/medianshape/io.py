"""Plain-text file formats.

Mesh::

    DIM d
    VERTICES n
    x y [z]                 (n lines)
    SIMPLICES q count       (one block per q >= 1)
    v0 v1 ... vq            (count lines, oriented vertex order)

Chain::

    CHAIN p count
    index coefficient       (count lines, nonzero entries)

Median solutions and flat-norm results wrap chain blocks with keyword headers; see
``write_solution`` and ``write_flat_norm``. Rationals are written as ``num/den``.
"""
from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .chain import Chain
from .complex import SimplicialComplex
from .cozy import EdgeColoredGraph
from .tu import IntMatrix


class FormatError(ValueError):
    pass


def atomic_write(path, text: str):
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def fmt_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def fmt_decimal(q: Fraction, digits: int = 20) -> str:
    q = Fraction(q)
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


# meshes -----------------------------------------------------------------------

def format_mesh(K: SimplicialComplex) -> str:
    out = [f"DIM {K.dim_ambient}", f"VERTICES {K.count(0)}"]
    out += [" ".join(repr(float(x)) for x in row) for row in K.vertices]
    for q in range(1, K.dim + 1):
        out.append(f"SIMPLICES {q} {K.count(q)}")
        out += [" ".join(map(str, K.oriented(q, i))) for i in range(K.count(q))]
    return "\n".join(out) + "\n"


def parse_mesh(text: str, complete_closure: bool = False) -> SimplicialComplex:
    lines = _lines(text)
    try:
        it = iter(lines)
        head = next(it).split()
        if head[0] != "DIM":
            raise FormatError("mesh must start with 'DIM d'")
        d = int(head[1])
        head = next(it).split()
        if head[0] != "VERTICES":
            raise FormatError("expected 'VERTICES n'")
        verts = []
        for _ in range(int(head[1])):
            row = [float(x) for x in next(it).split()]
            if len(row) != d:
                raise FormatError(f"vertex needs {d} coordinates")
            verts.append(row)
        simplices: dict[int, list[tuple[int, ...]]] = {}
        for line in it:
            head = line.split()
            if head[0] != "SIMPLICES":
                raise FormatError(f"unexpected line {line!r}")
            q, count = int(head[1]), int(head[2])
            simplices[q] = [tuple(int(v) for v in next(it).split()) for _ in range(count)]
    except StopIteration:
        raise FormatError("mesh file ended early") from None
    except (IndexError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed mesh: {exc}") from None
    return SimplicialComplex(verts, simplices, complete_closure=complete_closure)


def complexes_equal(K1: SimplicialComplex, K2: SimplicialComplex) -> bool:
    if K1.dim != K2.dim or not np.array_equal(K1.vertices, K2.vertices):
        return False
    return all(K1.simplices[q] == K2.simplices[q]
               and np.array_equal(K1.orientations[q], K2.orientations[q])
               for q in range(K1.dim + 1))


def read_mesh(path, complete_closure: bool = False) -> SimplicialComplex:
    return parse_mesh(Path(path).read_text(), complete_closure)


def write_mesh(path, K: SimplicialComplex):
    atomic_write(path, format_mesh(K))


# chains -----------------------------------------------------------------------

def format_chain_block(dim: int, items: Sequence[tuple[int, int]]) -> list[str]:
    return [f"CHAIN {dim} {len(items)}"] + [f"{i} {c}" for i, c in items]


def format_chain(c: Chain) -> str:
    return "\n".join(format_chain_block(c.dim, c.items())) + "\n"


def _parse_chain_block(it) -> tuple[int, dict[int, int]]:
    head = next(it).split()
    if head[0] != "CHAIN":
        raise FormatError("expected 'CHAIN p count'")
    p, count = int(head[1]), int(head[2])
    items: dict[int, int] = {}
    for _ in range(count):
        i, c = next(it).split()
        items[int(i)] = items.get(int(i), 0) + int(c)
    return p, items


def chain_from_items(K: SimplicialComplex, p: int, items: dict[int, int]) -> Chain:
    if not 0 <= p <= K.dim:
        raise FormatError(f"mesh has no {p}-simplices")
    for i in items:
        if not 0 <= i < K.count(p):
            raise FormatError(f"simplex index {i} out of range for dimension {p}")
    return Chain.from_dict(K, p, items)


def parse_chain(text: str, K: SimplicialComplex) -> Chain:
    try:
        p, items = _parse_chain_block(iter(_lines(text)))
    except (StopIteration, IndexError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError("malformed chain file") from None
    return chain_from_items(K, p, items)


def read_chain(path, K: SimplicialComplex) -> Chain:
    return parse_chain(Path(path).read_text(), K)


def write_chain(path, c: Chain):
    atomic_write(path, format_chain(c))


# median solutions -------------------------------------------------------------

@dataclass
class SolutionRecord:
    lam: Fraction
    mu: Fraction
    alpha: list[Fraction]
    objective: Fraction
    integral: bool
    t_hat: tuple[int, dict[int, int]] | None = None
    per_input: list[tuple[tuple[int, dict[int, int]], tuple[int, dict[int, int]]]] = field(default_factory=list)
    fractional: dict[int, Fraction] = field(default_factory=dict)


def format_solution(lam, mu, alpha, objective, integral: bool, t_hat: Chain | None = None,
                    per_input=(), fractional: dict[int, Fraction] | None = None) -> str:
    out = ["MEDIAN_SOLUTION",
           f"LAMBDA {fmt_fraction(lam)}",
           f"MU {fmt_fraction(mu)}",
           "ALPHA " + " ".join(fmt_fraction(a) for a in alpha),
           f"OBJECTIVE {fmt_fraction(objective)} {fmt_decimal(objective)}",
           f"INTEGRAL {'true' if integral else 'false'}"]
    if t_hat is not None:
        out.append("MEDIAN")
        out += format_chain_block(t_hat.dim, t_hat.items())
    for h, (r, s) in enumerate(per_input, start=1):
        out.append(f"INPUT {h}")
        out += format_chain_block(r.dim, r.items())
        out += format_chain_block(s.dim, s.items())
    if fractional:
        out.append(f"FRACTIONAL_LP {len(fractional)}")
        out += [f"{j} {fmt_fraction(v)}" for j, v in sorted(fractional.items())]
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> SolutionRecord:
    try:
        it = iter(_lines(text))
        if next(it) != "MEDIAN_SOLUTION":
            raise FormatError("not a median solution file")
        fields = {}
        for key in ("LAMBDA", "MU", "ALPHA", "OBJECTIVE", "INTEGRAL"):
            parts = next(it).split()
            if parts[0] != key:
                raise FormatError(f"expected {key}")
            fields[key] = parts[1:]
        rec = SolutionRecord(Fraction(fields["LAMBDA"][0]), Fraction(fields["MU"][0]),
                             [Fraction(a) for a in fields["ALPHA"]],
                             Fraction(fields["OBJECTIVE"][0]), fields["INTEGRAL"][0] == "true")
        for line in it:
            head = line.split()
            if head[0] == "MEDIAN":
                rec.t_hat = _parse_chain_block(it)
            elif head[0] == "INPUT":
                rec.per_input.append((_parse_chain_block(it), _parse_chain_block(it)))
            elif head[0] == "FRACTIONAL_LP":
                for _ in range(int(head[1])):
                    j, v = next(it).split()
                    rec.fractional[int(j)] = Fraction(v)
            else:
                raise FormatError(f"unexpected line {line!r}")
    except (StopIteration, IndexError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed solution file: {exc}") from None
    return rec


def solution_chains(rec: SolutionRecord, K: SimplicialComplex):
    """``(t_hat, [(r_h, s_h), ...])`` as Chains on K."""
    t_hat = chain_from_items(K, *rec.t_hat)
    pairs = [(chain_from_items(K, *r), chain_from_items(K, *s)) for r, s in rec.per_input]
    return t_hat, pairs


# flat norm --------------------------------------------------------------------

def format_flat_norm(decomp) -> str:
    out = ["FLATNORM",
           f"LAMBDA {fmt_fraction(decomp.lam)}",
           f"VALUE {fmt_fraction(decomp.value)} {fmt_decimal(decomp.value)}"]
    out += format_chain_block(decomp.x.dim, decomp.x.items())
    out += format_chain_block(decomp.s.dim, decomp.s.items())
    return "\n".join(out) + "\n"


def parse_flat_norm(text: str, K: SimplicialComplex):
    from .flatnorm import FlatNormDecomposition

    it = iter(_lines(text))
    try:
        if next(it) != "FLATNORM":
            raise FormatError("not a flat norm file")
        lam = Fraction(next(it).split()[1])
        value = Fraction(next(it).split()[1])
        x = chain_from_items(K, *_parse_chain_block(it))
        s = chain_from_items(K, *_parse_chain_block(it))
    except (StopIteration, IndexError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError("malformed flat norm file") from None
    return FlatNormDecomposition(x, s, value, lam)


# matrices, graphs, points -----------------------------------------------------

def parse_matrix(text: str) -> IntMatrix:
    rows = [[int(a) for a in line.split()] for line in _lines(text)]
    if not rows:
        raise FormatError("empty matrix")
    return IntMatrix(tuple(tuple(r) for r in rows))


def format_matrix(M: IntMatrix) -> str:
    return "\n".join(" ".join(str(a) for a in row) for row in M.entries) + "\n"


def format_graph(G: EdgeColoredGraph) -> str:
    out = [f"{G.k} {G.n_vertices} {G.n_edges}"]
    out += [f"{u} {v} {c}" for u, v, c in G.edges]
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> EdgeColoredGraph:
    lines = _lines(text)
    try:
        k, n, m = (int(x) for x in lines[0].split())
        edges = [tuple(int(x) for x in line.split()) for line in lines[1:]]
    except (IndexError, ValueError):
        raise FormatError("malformed graph file") from None
    if len(edges) != m or any(len(e) != 3 for e in edges):
        raise FormatError(f"expected {m} 'u v color' lines")
    return EdgeColoredGraph(n, tuple(edges), k)


def parse_points(text: str) -> list[tuple[float, ...]]:
    pts = [tuple(float(x) for x in line.split()) for line in _lines(text)]
    if any(len(p) not in (2, 3) for p in pts):
        raise FormatError("points need 2 or 3 coordinates")
    return pts


def format_plot_data(K: SimplicialComplex, tagged: Sequence[tuple[str, Chain]]) -> str:
    """One line per nonzero simplex: tag, vertex coordinates in orientation order, coefficient."""
    out = []
    for tag, c in tagged:
        for i, coeff in c.items():
            coords = [repr(float(x)) for v in K.oriented(c.dim, i) for x in K.vertices[v]]
            out.append(" ".join([tag, *coords, str(coeff)]))
    return "\n".join(out) + ("\n" if out else "")
