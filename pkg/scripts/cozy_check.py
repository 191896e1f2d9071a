"""Random cozy graphs: comfort, spine parity, and edge connectivity of joined graphs."""
import random
from collections import Counter
from dataclasses import dataclass

from medianshape.cozy import (is_comfortable, is_connected, join_across, min_edge_cut,
                              random_cozy, spines_and_ribs)

from common import parse_config


@dataclass
class Config:
    graphs: int = 500
    max_vertices: int = 20
    seed: int = 0


def main(cfg: Config):
    rng = random.Random(cfg.seed)
    comfy = Counter()
    for i in range(cfg.graphs):
        k = rng.choice([2, 3, 4, 5])
        G = random_cozy(k, rng.choice(range(6, cfg.max_vertices + 1, 2)), cfg.seed * 10 ** 6 + i)
        comfy[k] += is_comfortable(G)
        U = {x for x in range(G.n_vertices) if rng.random() < 0.5}
        spines, _ = spines_and_ribs(G, U)
        per_color = Counter(c for _, _, c in spines)
        assert all(per_color[c] % 2 == len(U) % 2 for c in range(1, k + 1))
    for k in sorted(comfy):
        print(f"k={k}: {comfy[k]} comfortable")
    cuts = Counter()
    for i in range(cfg.graphs // 5):
        k = rng.choice([3, 4, 5])
        G = join_across(random_cozy(k, 6, 2 * i), random_cozy(k, 8, 2 * i + 1),
                        list(range(1, rng.randint(1, (k - 1) // 2) + 1)))
        if is_connected(G):
            cuts[(k, min_edge_cut(G)[0])] += 1
    for (k, ec), count in sorted(cuts.items()):
        print(f"joined graphs with k={k}, ec={ec}: {count}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
