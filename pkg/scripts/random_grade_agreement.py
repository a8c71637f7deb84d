"""Compare the Koszul and Ext grade routes on random ideals over a prime field."""

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from cmlab.algebra.field import GF
from cmlab.algebra.poly import PolyRing
from cmlab.algebra.ring import PresentedRing
from cmlab.grade import classical_grade, format_grade, p_grade


@dataclass
class Config:
    instances: int = 50
    prime: int = 32003
    max_vars: int = 3
    max_gens: int = 3
    max_degree: int = 3
    seed: int = 0


def random_form(P, rng, max_degree):
    terms = {}
    for _ in range(rng.randint(2, 4)):
        d = rng.randint(1, max_degree)
        cuts = sorted(rng.randint(0, d) for _ in range(P.nvars - 1))
        terms[tuple(b - a for a, b in zip([0] + cuts, cuts + [d]))] = rng.randint(1, P.field.characteristic - 1)
    return P.from_dict(terms)


def main(cfg: Config):
    rng = random.Random(cfg.seed)
    F = GF(cfg.prime)
    names = ["x", "y", "z", "w"][: cfg.max_vars]
    seen = Counter()
    disagreements = []
    t0 = time.perf_counter()
    for i in range(cfg.instances):
        P = PolyRing(F, names[: rng.randint(1, cfg.max_vars)])
        R = PresentedRing(P)
        gens = [random_form(P, rng, cfg.max_degree) for _ in range(rng.randint(1, cfg.max_gens))]
        a, b = p_grade(R, gens), classical_grade(R.ideal(gens))
        seen[format_grade(a)] += 1
        if a != b:
            disagreements.append((i, [str(g) for g in gens], a, b))
    print(f"{cfg.instances} instances in {time.perf_counter() - t0:.2f}s; grades seen {dict(sorted(seen.items(), key=str))}")
    for d in disagreements:
        print("DISAGREE", *d)
    print("all routes agree" if not disagreements else f"{len(disagreements)} disagreements")
    return len(disagreements)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    for f, default in vars(Config()).items():
        p.add_argument(f"--{f.replace('_', '-')}", type=int, default=default)
    raise SystemExit(1 if main(Config(**vars(p.parse_args()))) else 0)
