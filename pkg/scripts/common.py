"""Shared helpers for the experiment scripts."""
import argparse
import dataclasses
import math
from pathlib import Path

import numpy as np

from medianshape import io
from medianshape.median import MedianProblem, MedianSolution


def parse_config(cls, description: str):
    """Build an argparse parser from a config dataclass and return a filled instance."""
    parser = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        kind = f.type if isinstance(f.type, type) else eval(f.type)
        parser.add_argument("--" + f.name.replace("_", "-"), type=kind, default=f.default)
    return cls(**vars(parser.parse_args()))


def sine_points(offset: float, amplitude: float, periods: float = 1.0, samples: int = 400):
    xs = np.linspace(0.0, 1.0, samples)
    return [(float(x), offset + amplitude * math.sin(2 * math.pi * periods * x)) for x in xs]


def write_solution(out_dir: str, name: str, prob: MedianProblem, sol: MedianSolution):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lam, mu, alpha = prob.rational_params()
    io.atomic_write(out / f"{name}.txt", io.format_solution(lam, mu, alpha, sol.objective,
                                                            sol.integral, sol.t_hat, sol.per_input))
    tagged = [(f"input{h + 1}", t) for h, t in enumerate(prob.inputs)] + [("median", sol.t_hat)]
    io.atomic_write(out / f"{name}_plot.txt", io.format_plot_data(prob.complex, tagged))


def report(prob: MedianProblem, sol: MedianSolution, seconds: float):
    K = prob.complex
    print(f"complex: {K.count(0)} vertices, {K.count(1)} edges, {K.count(2)} triangles")
    print(f"objective {io.fmt_fraction(sol.objective)} ({io.fmt_decimal(sol.objective)})")
    print(f"integral {sol.integral}, {len(sol.t_hat.support())} median simplices, "
          f"{sol.lp.steps} pivots, {seconds:.1f} s")
