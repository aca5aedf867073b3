#!/usr/bin/env python3
"""Compare the greedy and polynomial almost-orthogonal constructions.

For a few dimensions, report how many unit vectors the seeded greedy
rejection sampler packs below a pairwise inner-product bound, next to the
exponential reference value (1 + delta^2/2)^d and, where a prime power
fits, the polynomial construction's guaranteed count.

Usage: python scripts/spherical_code_experiment.py [--seed 1] [--trials 20000]
"""

import argparse
import sys

from collapsing.bounds import largest_prime_power
from collapsing.constructions import (
    FiniteFieldParams,
    greedy_unit_vectors,
    polynomial_vectors,
)


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--trials", type=int, default=20_000)
    parser.add_argument("--dims", type=int, nargs="+", default=[20, 42, 72, 110])
    parser.add_argument("--k", type=int, default=2,
                        help="collapsing parameter; bound is 1/(2k+1)")
    args = parser.parse_args()
    delta = 1.0 / (2 * args.k + 1)
    print("d,greedy_count,reference,poly_q,poly_count")
    for d in args.dims:
        aos = greedy_unit_vectors(d, delta, seed=args.seed, max_trials=args.trials)
        reference = (1 + delta**2 / 2) ** d
        q = largest_prime_power(d + 1)
        if q is not None and q >= 2 * args.k + 2:
            # degree-1 polynomials keep the pairwise bound at 1/(q-1) <= delta
            poly = polynomial_vectors(FiniteFieldParams(q, 1))
            poly_q, poly_count = q, poly.m
        else:
            poly_q, poly_count = "", ""
        print(f"{d},{aos.m},{reference:.2f},{poly_q},{poly_count}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
