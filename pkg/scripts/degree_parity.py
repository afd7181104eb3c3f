"""Mapping-degree estimates for powers and random non-degenerate quaternion forms.

Odd forms should give odd estimates; the histogram of values is printed
per degree together with the number of rejected targets.
"""

import argparse
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from algzeros.algebra import quaternions
from algzeros.certify import NondegenerateReal, certify_nondegenerate
from algzeros.parser import parse_map
from algzeros.polymap import PolynomialMap
from algzeros.solve import SolveConfig, mapping_degree_estimate

from solver_statistics import coefficient, random_word


@dataclass
class Config:
    forms: int = 20
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--forms", type=int, default=Config.forms)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    cfg = Config(a.forms, a.seed)
    H = quaternions()
    for d in (1, 2, 3, 4):
        est = mapping_degree_estimate([parse_map("x" + "*x" * (d - 1), H)])
        print(f"x^{d}: estimate {est.value} from {est.preimages} real preimages")
    rng = np.random.default_rng(cfg.seed)
    for d in (1, 2, 3):
        values, rejected, n = Counter(), 0, 0
        while n < cfg.forms:
            terms = tuple((coefficient(rng), random_word(H, rng, d)) for _ in range(int(rng.integers(1, 3))))
            form = PolynomialMap(H, 1, terms)
            if not isinstance(certify_nondegenerate([form]), NondegenerateReal):
                continue
            n += 1
            est = mapping_degree_estimate([form], cfg=SolveConfig(seed=n))
            values[est.value] += 1
            rejected += est.attempts - 1
        print(f"degree {d} forms: estimates {dict(sorted(values.items(), key=lambda kv: (kv[0] is None, kv[0])))}"
              f", rejected targets {rejected}")


if __name__ == "__main__":
    main()
