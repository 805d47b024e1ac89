#!/usr/bin/env python3
"""Compare the maximal-class criterion with the computed class.

Exhaustive for n = 4, random samples (fixed seed) for n >= 5.

    python scripts/maximal_class_sweep.py --p 3 --samples 10000
"""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from saa.algebra import nilpotency_class
from saa.classify import enumerate_presentations
from saa.field import PrimeField
from saa.presentation import (
    NilpotentPresentation,
    build_algebra,
    is_maximal_class_presentation,
    num_parameters,
)


@dataclass(frozen=True)
class SweepConfig:
    p: int = 3
    sample_n: tuple[int, ...] = (5,)
    samples: int = 10_000
    seed: int = 20240605


def _compare(presentations):
    total = hits = bad = 0
    for P in presentations:
        crit = is_maximal_class_presentation(P)
        maximal = nilpotency_class(build_algebra(P, check=False)) == 2 * P.n - 3
        total += 1
        hits += crit
        bad += crit != maximal
    return total, hits, bad


def run(cfg: SweepConfig):
    F = PrimeField(cfg.p)
    rng = np.random.default_rng(cfg.seed)
    jobs = [(4, "all", enumerate_presentations(4, F))]
    for n in cfg.sample_n:
        m = num_parameters(n)
        gen = (NilpotentPresentation.from_parameters(F, n, rng.integers(0, F.p, m))
               for _ in range(cfg.samples))
        jobs.append((n, "sampled", gen))
    for n, kind, gen in jobs:
        t = time.perf_counter()
        total, hits, bad = _compare(gen)
        print(f"n={n} GF({cfg.p}) {kind}: {total} presentations, {hits} meet the criterion, "
              f"{bad} disagreements ({time.perf_counter() - t:.1f}s)")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--n", type=int, nargs="*", default=[5])
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=20240605)
    a = ap.parse_args()
    run(SweepConfig(a.p, tuple(a.n), a.samples, a.seed))


if __name__ == "__main__":
    main()
