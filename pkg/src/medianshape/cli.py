"""Command line interface.

Exit codes: 0 success, 2 usage or validation error, 3 unreachable geometry while
snapping, 4 fractional LP optimum.
"""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .chain import UnreachableError, snap_polyline
from .complex import build_grid_2d, build_grid_3d
from .cozy import cozy_defects, is_comfortable, random_cozy
from .flatnorm import flat_norm
from .lp import FractionalOptimum, rationalize
from .median import (DEFAULT_LAMBDA, DEFAULT_MU, MedianProblem, interpolation_sweep,
                     solve_median)
from .tu import i_sum, is_totally_unimodular

EXIT_USAGE = 2
EXIT_GEOMETRY = 3
EXIT_FRACTIONAL = 4


def default_sig_digits() -> int:
    return int(os.environ.get("MEDIANSHAPE_SIG_DIGITS", "12"))


def _number(text: str) -> Fraction | float:
    """Rationals like ``1/3`` stay exact; decimals are read as floats."""
    if "/" in text:
        return Fraction(text)
    return float(text)


def cmd_mesh(args):
    if args.kind == "grid2d":
        K = build_grid_2d(args.nx, args.ny, args.width, args.height)
    else:
        K = build_grid_3d(args.nx, args.ny, args.nz, tuple(args.extents))
    io.write_mesh(args.output, K)
    print(f"wrote {K!r} to {args.output}")


def cmd_snap(args):
    K = io.read_mesh(args.mesh, args.complete_closure)
    pts = io.parse_points(Path(args.points).read_text())
    c = snap_polyline(K, pts, args.sig_digits)
    io.write_chain(args.output, c)
    print(f"wrote 1-chain with {len(c.items())} nonzero edges to {args.output}")


def _numbered(path: Path, k: int, width: int) -> Path:
    return path.with_name(f"{path.stem}_{k:0{width}d}{path.suffix}")


def _write_median(out: Path, plot: Path | None, prob: MedianProblem, sol):
    lam, mu, alpha = prob.rational_params()
    io.atomic_write(out, io.format_solution(lam, mu, alpha, sol.objective, sol.integral,
                                            sol.t_hat, sol.per_input))
    if plot is not None:
        tagged = [(f"input_{h}", t) for h, t in enumerate(prob.inputs, start=1)]
        tagged.append(("median", sol.t_hat))
        tagged += [(f"fill_{h}", s) for h, (_, s) in enumerate(sol.per_input, start=1)]
        io.atomic_write(plot, io.format_plot_data(prob.complex, tagged))


def cmd_median(args):
    K = io.read_mesh(args.mesh, args.complete_closure)
    inputs = [io.read_chain(p, K) for p in args.input]
    alpha = args.alpha
    if alpha is not None and len(alpha) != len(inputs):
        raise ValueError(f"--alpha needs {len(inputs)} values")
    prob = MedianProblem(K, inputs, args.lam, args.mu, alpha, args.sig_digits)
    out = Path(args.output)
    plot = Path(args.plot_data) if args.plot_data else None
    try:
        if args.sweep:
            width = len(str(args.sweep))
            for k, (alpha_k, sol) in enumerate(interpolation_sweep(prob, args.sweep)):
                sub = MedianProblem(K, inputs, args.lam, args.mu, alpha_k, args.sig_digits)
                _write_median(_numbered(out, k, width),
                              _numbered(plot, k, width) if plot else None, sub, sol)
            print(f"wrote {args.sweep + 1} solutions next to {out}")
            return 0
        sol = solve_median(prob)
    except FractionalOptimum as exc:
        lam, mu, alpha_q = prob.rational_params()
        frac = {j: v for j, v in enumerate(exc.solution.x) if v}
        io.atomic_write(out, io.format_solution(lam, mu, alpha_q, exc.solution.objective,
                                                False, fractional=frac))
        print(f"fractional LP optimum; rational solution written to {out}", file=sys.stderr)
        return EXIT_FRACTIONAL
    _write_median(out, plot, prob, sol)
    print(f"objective {io.fmt_fraction(sol.objective)} ({io.fmt_decimal(sol.objective)})")
    return 0


def cmd_flatnorm(args):
    K = io.read_mesh(args.mesh, args.complete_closure)
    t = io.read_chain(args.input, K)
    try:
        d = flat_norm(K, t, args.lam, args.sig_digits)
    except FractionalOptimum:
        print("fractional flat norm optimum", file=sys.stderr)
        return EXIT_FRACTIONAL
    io.atomic_write(args.output, io.format_flat_norm(d))
    print(f"flat norm {io.fmt_fraction(d.value)} ({io.fmt_decimal(d.value)})")
    return 0


def cmd_tu(args):
    M = io.parse_matrix(Path(args.matrix).read_text())
    if args.action == "isum":
        S = i_sum(M, args.n)
        text = io.format_matrix(S)
        if args.output:
            io.atomic_write(args.output, text)
        else:
            sys.stdout.write(text)
        return 0
    res = is_totally_unimodular(M, samples=args.samples, seed=args.seed)
    if res.is_tu:
        print("TU" if res.exhaustive else f"TU (no violation in {args.samples} samples)")
    else:
        rows = ",".join(str(i + 1) for i in res.rows)
        cols = ",".join(str(j + 1) for j in res.cols)
        print(f"NOT TU, witness det {res.det} rows {rows} cols {cols}")
    return 0


def cmd_cozy(args):
    if args.action == "random":
        G = random_cozy(args.k, args.n, args.seed)
        text = io.format_graph(G)
        if args.output:
            io.atomic_write(args.output, text)
        else:
            sys.stdout.write(text)
        return 0
    G = io.parse_graph(Path(args.graph).read_text())
    defects = cozy_defects(G)
    print(f"{G.k}-cozy" if not defects else "not cozy: " + "; ".join(defects))
    if args.comfortable:
        ok = is_comfortable(G)
        print(f"{G.k}-comfortable" if ok else f"not {G.k}-comfortable")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="medianshape",
                                     description="Median shapes of chains on simplicial complexes.")
    sub = parser.add_subparsers(dest="command", required=True)
    sig = dict(type=int, default=default_sig_digits(),
               help="significant digits when rationalising volumes and parameters")

    mesh = sub.add_parser("mesh", help="generate structured meshes")
    mesh_sub = mesh.add_subparsers(dest="kind", required=True)
    g2 = mesh_sub.add_parser("grid2d")
    g2.add_argument("--nx", type=int, required=True)
    g2.add_argument("--ny", type=int, required=True)
    g2.add_argument("--width", type=float, default=1.0)
    g2.add_argument("--height", type=float, default=1.0)
    g2.add_argument("-o", "--output", required=True)
    g3 = mesh_sub.add_parser("grid3d")
    g3.add_argument("--nx", type=int, required=True)
    g3.add_argument("--ny", type=int, required=True)
    g3.add_argument("--nz", type=int, required=True)
    g3.add_argument("--extents", type=float, nargs=3, default=[1.0, 1.0, 1.0])
    g3.add_argument("-o", "--output", required=True)
    mesh.set_defaults(func=cmd_mesh)

    def mesh_args(p):
        p.add_argument("--mesh", required=True)
        p.add_argument("--complete-closure", action="store_true",
                       help="add faces missing from the mesh file")
        p.add_argument("--sig-digits", **sig)

    snap = sub.add_parser("snap", help="snap a polyline onto mesh edges")
    mesh_args(snap)
    snap.add_argument("--points", required=True)
    snap.add_argument("-o", "--output", required=True)
    snap.set_defaults(func=cmd_snap)

    med = sub.add_parser("median", help="solve the median shape LP")
    mesh_args(med)
    med.add_argument("--input", nargs="+", required=True)
    med.add_argument("--lambda", dest="lam", type=_number, default=DEFAULT_LAMBDA)
    med.add_argument("--mu", type=_number, default=DEFAULT_MU)
    med.add_argument("--alpha", type=_number, nargs="+")
    med.add_argument("--sweep", type=int, default=0,
                     help="weighted-median interpolation in N steps (two inputs)")
    med.add_argument("-o", "--output", required=True)
    med.add_argument("--plot-data")
    med.set_defaults(func=cmd_median)

    fn = sub.add_parser("flatnorm", help="flat norm decomposition of one chain")
    mesh_args(fn)
    fn.add_argument("--input", required=True)
    fn.add_argument("--lambda", dest="lam", type=_number, default=DEFAULT_LAMBDA)
    fn.add_argument("-o", "--output", required=True)
    fn.set_defaults(func=cmd_flatnorm)

    tu = sub.add_parser("tu", help="total unimodularity tools")
    tu_sub = tu.add_subparsers(dest="action", required=True)
    check = tu_sub.add_parser("check")
    check.add_argument("--matrix", required=True)
    check.add_argument("--samples", type=int, default=None,
                       help="random submatrices to test when exhaustive search is too large")
    check.add_argument("--seed", type=int, default=0)
    isum = tu_sub.add_parser("isum")
    isum.add_argument("--matrix", required=True)
    isum.add_argument("--n", type=int, required=True)
    isum.add_argument("-o", "--output")
    tu.set_defaults(func=cmd_tu)

    cz = sub.add_parser("cozy", help="cozy/comfortable graph tools")
    cz_sub = cz.add_subparsers(dest="action", required=True)
    ver = cz_sub.add_parser("verify")
    ver.add_argument("--graph", required=True)
    ver.add_argument("--comfortable", action="store_true")
    rnd = cz_sub.add_parser("random")
    rnd.add_argument("--k", type=int, required=True)
    rnd.add_argument("--n", type=int, required=True)
    rnd.add_argument("--seed", type=int, default=0)
    rnd.add_argument("-o", "--output")
    cz.set_defaults(func=cmd_cozy)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args) or 0
    except UnreachableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except FractionalOptimum as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FRACTIONAL
    except (ValueError, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
