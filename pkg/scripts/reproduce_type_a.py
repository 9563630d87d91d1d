#!/usr/bin/env python3
"""Type-A partition functions from four engines against prod(z_j - v z_i) * s_lambda."""
import argparse
import sys

from ffice import models as md

DEFAULT_GRID = [(1, (0,)), (1, (2,)), (2, (1, 0)), (2, (2, 1)), (3, (3, 1, 0))]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lambda", dest="lam", help="single partition to check, e.g. 3,1,0")
    args = parser.parse_args()
    grid = DEFAULT_GRID
    if args.lam:
        lam = tuple(int(p) for p in args.lam.split(","))
        grid = [(len(lam), lam)]
    bad = 0
    for n, lam in grid:
        spec = md.ModelSpecA(n, lam)
        rhs = md.theorem1_rhs(spec)
        agree = [m for m in ("enumerate", "transfer", "column", "fmatrix") if md.evaluate(spec, m) == rhs]
        ok = len(agree) == 4
        bad += not ok
        print(f"N={n} lambda={lam}: {'ok' if ok else 'MISMATCH'}  Z = {rhs.factored()}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
