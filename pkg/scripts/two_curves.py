"""Median of two boundary-sharing sine curves on a structured grid, with the envelope check."""
import time
from dataclasses import dataclass

from medianshape.chain import snap_polyline
from medianshape.complex import build_grid_2d
from medianshape.median import MedianProblem, envelope_violations, solve_median

from common import parse_config, report, sine_points, write_solution


@dataclass
class Config:
    nx: int = 16
    ny: int = 16
    lam: float = 1e-3
    mu: float = 1e-5
    amplitude: float = 0.3
    out_dir: str = "results/two_curves"


def main(cfg: Config):
    K = build_grid_2d(cfg.nx, cfg.ny)
    upper = snap_polyline(K, sine_points(0.5, cfg.amplitude))
    lower = snap_polyline(K, sine_points(0.5, -cfg.amplitude))
    prob = MedianProblem(K, [upper, lower], cfg.lam, cfg.mu)
    start = time.perf_counter()
    sol = solve_median(prob)
    report(prob, sol, time.perf_counter() - start)
    bad = envelope_violations(prob, sol)
    print("median inside the envelope" if not bad else f"outside the envelope: {bad}")
    write_solution(cfg.out_dir, "median", prob, sol)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
