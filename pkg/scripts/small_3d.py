"""Median of two surfaces spanning the same square loop in a tetrahedralized box."""
import time
from dataclasses import dataclass

import numpy as np

from medianshape.chain import Chain, apply_boundary
from medianshape.complex import boundary_matrix, build_grid_3d
from medianshape.median import MedianProblem, solve_median

from common import parse_config, report, write_solution


@dataclass
class Config:
    n: int = 2
    height: float = 0.5
    lam: float = 1e-2
    mu: float = 1e-5
    out_dir: str = "results/small_3d"


def main(cfg: Config):
    K = build_grid_3d(cfg.n, cfg.n, 1, (1.0, 1.0, cfg.height))
    B = boundary_matrix(K, 2).toarray()
    shell = B @ np.ones(K.count(3), dtype=np.int64)
    floor = np.array([all(K.vertices[v][2] == 0 for v in tri) for tri in K.simplices[2]])
    # the floor with reversed orientation and the other five sides share a boundary
    bottom = Chain(K, 2, np.where(floor, -shell, 0))
    rest = Chain(K, 2, np.where(floor, 0, shell))
    assert apply_boundary(K, bottom) == apply_boundary(K, rest)
    prob = MedianProblem(K, [bottom, rest], cfg.lam, cfg.mu)
    start = time.perf_counter()
    sol = solve_median(prob)
    report(prob, sol, time.perf_counter() - start)
    write_solution(cfg.out_dir, "median", prob, sol)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
