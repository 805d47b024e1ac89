#!/usr/bin/env python3
"""Check classify_small against the exhaustive Sp(2n, p) oracle on all pairs
of presentations (default: n = 3 over GF(2), i.e. the full Sp(6, 2))."""

import argparse
import time
from dataclasses import dataclass
from itertools import product

from saa.classify import classify_small, enumerate_presentations
from saa.field import PrimeField
from saa.oracle import YES, brute_force_isomorphic
from saa.presentation import build_algebra


@dataclass(frozen=True)
class ConcordanceConfig:
    n: int = 3
    p: int = 2
    budget: int = 2_000_000


def run(cfg: ConcordanceConfig) -> int:
    F = PrimeField(cfg.p)
    algebras = [build_algebra(P, check=False) for P in enumerate_presentations(cfg.n, F)]
    labels = [classify_small(A) for A in algebras]
    bad = 0
    for i, j in product(range(len(algebras)), repeat=2):
        t = time.perf_counter()
        res = brute_force_isomorphic(algebras[i], algebras[j], budget=cfg.budget,
                                     strategy="closure")
        agree = (res.status == YES) == (labels[i] == labels[j])
        bad += not agree
        print(f"{i} {j} {labels[i]} {labels[j]}: {res} "
              f"[{'agree' if agree else 'DISAGREE'}] {time.perf_counter() - t:.1f}s", flush=True)
    print(f"{bad} disagreements")
    return bad


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--budget", type=int, default=2_000_000)
    a = ap.parse_args()
    raise SystemExit(1 if run(ConcordanceConfig(a.n, a.p, a.budget)) else 0)


if __name__ == "__main__":
    main()
