"""TU verdicts for the 3x4 matrix, its I-sums, and small grid boundary matrices."""
import time
from dataclasses import dataclass

from medianshape.complex import boundary_matrix, build_grid_2d
from medianshape.tu import ISUM_COUNTEREXAMPLE, IntMatrix, i_sum, is_totally_unimodular

from common import parse_config


@dataclass
class Config:
    max_fold: int = 3
    samples: int = 100000


def verdict(name, M, **kw):
    start = time.perf_counter()
    res = is_totally_unimodular(M, **kw)
    took = time.perf_counter() - start
    if res:
        how = "exhaustive" if res.exhaustive else "sampled"
        print(f"{name} ({M.rows}x{M.cols}): TU, {how}, {took:.2f} s")
    else:
        print(f"{name} ({M.rows}x{M.cols}): NOT TU, det {res.det} on rows {res.rows} "
              f"cols {res.cols}, {took:.2f} s")


def main(cfg: Config):
    verdict("A", ISUM_COUNTEREXAMPLE)
    for n in range(1, cfg.max_fold + 1):
        verdict(f"I-sum of A, {n}-fold", i_sum(ISUM_COUNTEREXAMPLE, n))
    for nx, ny in ((2, 2), (3, 2)):
        M = IntMatrix.of(boundary_matrix(build_grid_2d(nx, ny), 1).toarray())
        verdict(f"grid {nx}x{ny} boundary, sampled", M, samples=cfg.samples, max_submatrices=1)
        verdict(f"grid {nx}x{ny} boundary", M)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
