import random
from fractions import Fraction as F

from collapsing.family import VectorFamily
from collapsing.matrixform import (
    check_rows,
    family_from_matrix,
    make_matrix,
    rank,
    row_sums,
)


def inflated_family(m: int, k: int, seed: int, balanced: bool) -> VectorFamily:
    """Norms->=1 k-collapsing family built from a row-structured matrix with
    inflated diagonal; the converse construction realises it in R^m."""
    rng = random.Random(seed)
    rows = []
    for i in range(m):
        if balanced:
            cap = min(F(m - 1, k), F(m - 1, m - k), F(3, 2))
            t = 1 + (cap - 1) * F(rng.randint(0, 8), 8)
            c = -t / (m - 1)
        else:
            t = 1 + F(rng.randint(0, 4), 8)
            lo, hi = F(-1, k), F(1 - t, k - 1)
            c = lo + (hi - lo) * F(rng.randint(0, 8), 8)
        row = [c] * m
        row[i] = t
        rows.append(row)
    matrix = make_matrix(rows)
    assert check_rows(matrix, k)
    if balanced:
        assert all(s == 0 for s in row_sums(matrix))
    return family_from_matrix(matrix, rank(matrix))
