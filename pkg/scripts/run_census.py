#!/usr/bin/env python3
"""Census of dim-2n nilpotent algebras over GF(p), with timing.

    python scripts/run_census.py --n 4 --p 5 [--method exact] [--jobs 2]
"""

import argparse
import time
from dataclasses import dataclass

from saa.classify import census, format_census


@dataclass(frozen=True)
class CensusConfig:
    n: int = 4
    p: int = 3
    method: str = "batch"
    jobs: int = 1


def run(cfg: CensusConfig) -> str:
    t = time.perf_counter()
    rows = census(cfg.n, cfg.p, method=cfg.method, jobs=cfg.jobs)
    text = format_census(rows, "table")
    return text + f"# n={cfg.n} p={cfg.p} method={cfg.method}: {time.perf_counter() - t:.1f}s\n"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--method", choices=("batch", "exact"), default="batch")
    ap.add_argument("--jobs", type=int, default=1)
    a = ap.parse_args()
    print(run(CensusConfig(a.n, a.p, a.method, a.jobs)), end="")


if __name__ == "__main__":
    main()
