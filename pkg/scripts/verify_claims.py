#!/usr/bin/env python3
"""Run the structure-theory claim checks (same as ``saa verify-paper``)."""

import sys

from saa.verify import run_claims

if __name__ == "__main__":
    only = sys.argv[1:] or None
    results = run_claims(only, on_result=lambda r: print(f"{r.line()} ({r.seconds:.1f}s)", flush=True))
    passed = sum(r.ok for r in results)
    print(f"{passed}/{len(results)} claims passed")
    sys.exit(0 if passed == len(results) else 1)
