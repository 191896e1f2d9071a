"""Three far-apart points on a path: the median is the zero chain with objective 3."""
from dataclasses import dataclass

from medianshape.chain import Chain
from medianshape.complex import build_path
from medianshape.median import MedianProblem, solve_median


@dataclass
class Config:
    n_edges: int = 14
    gap: int = 5


def main(cfg: Config):
    K = build_path(cfg.n_edges)
    points = [2, 2 + cfg.gap, 2 + 2 * cfg.gap]
    inputs = [Chain.from_dict(K, 0, {v: 1}) for v in points]
    for lam in (0.5, 1, 2):
        sol = solve_median(MedianProblem(K, inputs, lam=lam, mu=0))
        print(f"lambda {lam}: median {dict(sol.t_hat.items()) or 0}, objective {sol.objective}")


if __name__ == "__main__":
    from common import parse_config
    main(parse_config(Config, __doc__))
