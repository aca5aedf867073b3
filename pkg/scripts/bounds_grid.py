#!/usr/bin/env python3
"""Sweep the (k, d) grid and emit the aggregated bounds as CSV.

Usage: python scripts/bounds_grid.py [--kmax 40] [--dmax 40] > grid.csv
"""

import argparse
import sys

from collapsing.bounds import best_bounds


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--kmax", type=int, default=40)
    parser.add_argument("--dmax", type=int, default=40)
    args = parser.parse_args()
    print("k,d,best_lower,best_upper,exact")
    for k in range(2, args.kmax + 1):
        for d in range(2, args.dmax + 1):
            bb = best_bounds(k, d)
            exact = bb.exact if bb.exact is not None else ""
            print(f"{k},{d},{bb.best_lower},{bb.best_upper},{exact}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
