"""Exact rational linear algebra: row reduction, rank, solving, nullspaces.

Everything here works on nested sequences of ``int``/``Fraction``.  Integer
matrices go through fraction-free Bareiss elimination for rank (much faster
than generic Fraction pivoting); everything else uses plain rational
Gauss-Jordan.  Float matrices are handled by numpy with a relative singular
value cutoff.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .scalars import TOLERANCE, Scalar

Row = list
Matrix = list


def _copy(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence[Scalar]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over the rationals; returns (R, pivot columns)."""
    m = _copy(rows)
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank_exact(rows: Sequence[Sequence[Scalar]]) -> int:
    if not rows or not rows[0]:
        return 0
    if all(isinstance(x, int) for row in rows for x in row):
        return _rank_bareiss([list(row) for row in rows])
    return len(rref(rows)[1])


def _rank_bareiss(m: list[list[int]]) -> int:
    """Fraction-free elimination; intermediate entries stay integral."""
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            m[i] = [(pv * m[i][j] - f * m[r][j]) // prev for j in range(ncols)]
        prev = pv
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def rank_float(rows: Sequence[Sequence[float]], tol: float = TOLERANCE) -> int:
    a = np.asarray(rows, dtype=float)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def solve_square(a: Sequence[Sequence[Scalar]], b: Sequence[Scalar]) -> list[Fraction] | None:
    """Unique solution of a square rational system, or None if singular."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    for col in range(n):
        pivot_row = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot_row is None:
            return None
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


def solve_consistent(a: Sequence[Sequence[Scalar]], b: Sequence[Scalar]) -> list[Fraction] | None:
    """Any solution of a (possibly rectangular) system, or None if inconsistent."""
    if not a:
        return [] if all(x == 0 for x in b) else None
    ncols = len(a[0])
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    for row in red:
        if all(x == 0 for x in row[:ncols]) and row[ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        if c == ncols:
            return None  # pivot in the rhs column: inconsistent
        x[c] = red[r][ncols]
    return x


def nullspace(rows: Sequence[Sequence[Scalar]]) -> list[list[Fraction]]:
    """Basis of the rational kernel of the matrix (row-vector convention)."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    if len(u) != len(v):
        raise ValueError(f"length mismatch {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def mat_mul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> Matrix:
    bt = list(zip(*b))
    return [[dot(row, col) for col in bt] for row in a]


def transpose(a: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(col) for col in zip(*a)]
