"""Weighted medians of two curves as the weight moves from the first input to the second."""
from dataclasses import dataclass

from medianshape import io
from medianshape.chain import snap_polyline
from medianshape.complex import build_grid_2d
from medianshape.median import MedianProblem, interpolation_sweep

from common import parse_config, sine_points, write_solution


@dataclass
class Config:
    nx: int = 10
    ny: int = 10
    lam: float = 1e-3
    mu: float = 0.0
    steps: int = 10
    out_dir: str = "results/interpolation"


def main(cfg: Config):
    K = build_grid_2d(cfg.nx, cfg.ny)
    inputs = [snap_polyline(K, sine_points(0.5, 0.3)), snap_polyline(K, sine_points(0.5, -0.3))]
    prob = MedianProblem(K, inputs, cfg.lam, cfg.mu)
    width = len(str(cfg.steps))
    for k, (alpha, sol) in enumerate(interpolation_sweep(prob, cfg.steps)):
        sub = MedianProblem(K, inputs, cfg.lam, cfg.mu, alpha)
        write_solution(cfg.out_dir, f"sweep_{k:0{width}d}", sub, sol)
        tags = [name for name, t in (("t1", inputs[0]), ("t2", inputs[1])) if sol.t_hat == t]
        print(f"alpha ({alpha[0]}, {alpha[1]}): objective {io.fmt_decimal(sol.objective, 8)}, "
              f"{len(sol.t_hat.support())} edges {' '.join(tags)}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
