"""Path statistics and wall time of the total-degree homotopy on random dense systems."""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from algzeros.multipoly import MultiPoly
from algzeros.solve import SolveConfig, solve_complex_total_degree


@dataclass
class Config:
    max_vars: int = 4
    degree: int = 2
    seed: int = 0


def dense_poly(n, d, rng):
    from itertools import product
    terms = {}
    for e in product(range(d + 1), repeat=n):
        if sum(e) <= d:
            terms[e] = complex(rng.normal(), rng.normal())
    return MultiPoly(n, terms)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-vars", type=int, default=Config.max_vars)
    ap.add_argument("--degree", type=int, default=Config.degree)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    cfg = Config(a.max_vars, a.degree, a.seed)
    rng = np.random.default_rng(cfg.seed)
    print(f"{'n':>2} {'Bezout':>7} {'solutions':>9} {'max residual':>13} {'seconds':>8}  status")
    for n in range(1, cfg.max_vars + 1):
        polys = [dense_poly(n, cfg.degree, rng) for _ in range(n)]
        t = time.perf_counter()
        rep = solve_complex_total_degree(polys, SolveConfig(seed=cfg.seed))
        dt = time.perf_counter() - t
        res = max((z.residual for z in rep.zeros), default=float("nan"))
        print(f"{n:2d} {rep.bezout_count:7d} {len(rep.zeros):9d} {res:13.2e} {dt:8.2f}  {rep.status_counts()}")


if __name__ == "__main__":
    main()
