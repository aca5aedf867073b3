"""Exact rational linear programming.

Two-phase primal simplex with Bland's rule over ``Fraction`` entries.  The
problems solved here are tiny (tens of variables), so simplicity and
exactness beat speed.  ``linprog_exact`` mirrors the scipy calling
convention, which keeps cross-checking against ``scipy.optimize.linprog``
straightforward in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import solve_square
from .scalars import Scalar

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    objective: Fraction | None = None
    x: list[Fraction] | None = None
    # One multiplier per constraint of the problem as posed (ub rows first,
    # then eq rows), from the optimal basis of the standard-form program.
    duals: list[Fraction] | None = None


def _simplex(tableau: list[list[Fraction]], basis: list[int], cost: list[Fraction]) -> str:
    """Minimize cost over the tableau in place; Bland's rule, no cycling."""
    nrows = len(tableau)
    ncols = len(tableau[0]) - 1
    while True:
        # reduced costs: c_j - c_B . column_j
        entering = -1
        for j in range(ncols):
            red = cost[j] - sum(cost[basis[i]] * tableau[i][j] for i in range(nrows))
            if red < 0:
                entering = j
                break
        if entering < 0:
            return OPTIMAL
        leaving = -1
        best_ratio = None
        for i in range(nrows):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio and basis[i] < basis[leaving]
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            return UNBOUNDED
        pv = tableau[leaving][entering]
        tableau[leaving] = [x / pv for x in tableau[leaving]]
        for i in range(nrows):
            if i != leaving and tableau[i][entering] != 0:
                f = tableau[i][entering]
                tableau[i] = [x - f * y for x, y in zip(tableau[i], tableau[leaving])]
        basis[leaving] = entering


def solve_standard(
    c: Sequence[Scalar], a: Sequence[Sequence[Scalar]], b: Sequence[Scalar]
) -> LPResult:
    """min c.x  subject to  a x = b, x >= 0, all data rational."""
    nrows = len(a)
    ncols = len(c)
    c = [Fraction(v) for v in c]
    rows = [[Fraction(x) for x in row] for row in a]
    rhs = [Fraction(v) for v in b]
    row_sign = [1] * nrows
    for i in range(nrows):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
            row_sign[i] = -1

    # Phase 1: artificial variable per row.
    tableau = [rows[i] + [Fraction(int(i == j)) for j in range(nrows)] + [rhs[i]] for i in range(nrows)]
    basis = [ncols + i for i in range(nrows)]
    phase1_cost = [Fraction(0)] * ncols + [Fraction(1)] * nrows
    status = _simplex(tableau, basis, phase1_cost)
    if status != OPTIMAL:
        return LPResult(status=INFEASIBLE)
    value = sum(tableau[i][-1] for i in range(nrows) if basis[i] >= ncols)
    if value != 0:
        return LPResult(status=INFEASIBLE)
    # Pivot remaining artificials out where possible; redundant rows keep a
    # zero-valued artificial in the basis, which is harmless below.
    for i in range(nrows):
        if basis[i] >= ncols:
            entering = next((j for j in range(ncols) if tableau[i][j] != 0), None)
            if entering is not None:
                pv = tableau[i][entering]
                tableau[i] = [x / pv for x in tableau[i]]
                for r in range(nrows):
                    if r != i and tableau[r][entering] != 0:
                        f = tableau[r][entering]
                        tableau[r] = [x - f * y for x, y in zip(tableau[r], tableau[i])]
                basis[i] = entering

    # Phase 2 on the same tableau; artificial columns get prohibitive cost
    # only implicitly: their reduced costs never go negative because we keep
    # their cost at zero and forbid them from entering.
    phase2_cost = c + [Fraction(0)] * nrows

    nall = ncols + nrows

    def phase2() -> str:
        while True:
            entering = -1
            for j in range(ncols):  # artificials never re-enter
                red = phase2_cost[j] - sum(
                    phase2_cost[basis[i]] * tableau[i][j] for i in range(nrows)
                )
                if red < 0:
                    entering = j
                    break
            if entering < 0:
                return OPTIMAL
            leaving = -1
            best_ratio = None
            for i in range(nrows):
                av = tableau[i][entering]
                if av > 0:
                    ratio = tableau[i][-1] / av
                    if best_ratio is None or ratio < best_ratio or (
                        ratio == best_ratio and basis[i] < basis[leaving]
                    ):
                        best_ratio = ratio
                        leaving = i
            if leaving < 0:
                return UNBOUNDED
            pv = tableau[leaving][entering]
            tableau[leaving] = [x / pv for x in tableau[leaving]]
            for i in range(nrows):
                if i != leaving and tableau[i][entering] != 0:
                    f = tableau[i][entering]
                    tableau[i] = [x - f * y for x, y in zip(tableau[i], tableau[leaving])]
            basis[leaving] = entering

    status = phase2()
    if status != OPTIMAL:
        return LPResult(status=UNBOUNDED)

    x = [Fraction(0)] * nall
    for i in range(nrows):
        x[basis[i]] = tableau[i][-1]
    objective = sum(ci * xi for ci, xi in zip(c, x[:ncols]))

    # Duals: solve B^T y = c_B against the original column data.  Stacking
    # the basis columns as rows yields exactly B^T in row-major form.
    columns = [[rows[i][j] for i in range(nrows)] for j in range(ncols)]
    art_columns = [[Fraction(int(i == j)) for i in range(nrows)] for j in range(nrows)]
    bmat = []
    cb = []
    for bi in basis:
        bmat.append(columns[bi] if bi < ncols else art_columns[bi - ncols])
        cb.append(phase2_cost[bi])
    y = solve_square(bmat, cb)
    duals = None
    if y is not None:
        duals = [row_sign[i] * y[i] for i in range(nrows)]
    return LPResult(status=OPTIMAL, objective=objective, x=x[:ncols], duals=duals)


def linprog_exact(
    c: Sequence[Scalar],
    a_ub: Sequence[Sequence[Scalar]] | None = None,
    b_ub: Sequence[Scalar] | None = None,
    a_eq: Sequence[Sequence[Scalar]] | None = None,
    b_eq: Sequence[Scalar] | None = None,
    nonneg: Sequence[bool] | None = None,
) -> LPResult:
    """min c.x  st  a_ub x <= b_ub, a_eq x = b_eq; nonneg[i] marks x_i >= 0
    (default), others are free.  Exact rational data throughout."""
    n = len(c)
    a_ub = [list(r) for r in (a_ub or [])]
    b_ub = list(b_ub or [])
    a_eq = [list(r) for r in (a_eq or [])]
    b_eq = list(b_eq or [])
    if nonneg is None:
        nonneg = [True] * n

    # Map to standard form: free x -> x+ - x-, inequalities get slacks.
    col_of: list[tuple[int, int | None]] = []  # (plus column, minus column)
    std_cols = 0
    for i in range(n):
        if nonneg[i]:
            col_of.append((std_cols, None))
            std_cols += 1
        else:
            col_of.append((std_cols, std_cols + 1))
            std_cols += 2
    nslack = len(a_ub)

    def expand(row: Sequence[Scalar]) -> list[Fraction]:
        out = [Fraction(0)] * (std_cols + nslack)
        for i, v in enumerate(row):
            p, m = col_of[i]
            out[p] = Fraction(v)
            if m is not None:
                out[m] = -Fraction(v)
        return out

    rows = []
    rhs = []
    for i, row in enumerate(a_ub):
        r = expand(row)
        r[std_cols + i] = Fraction(1)
        rows.append(r)
        rhs.append(Fraction(b_ub[i]))
    for i, row in enumerate(a_eq):
        rows.append(expand(row))
        rhs.append(Fraction(b_eq[i]))

    cost = [Fraction(0)] * (std_cols + nslack)
    for i, v in enumerate(c):
        p, m = col_of[i]
        cost[p] = Fraction(v)
        if m is not None:
            cost[m] = -Fraction(v)

    res = solve_standard(cost, rows, rhs)
    if res.status != OPTIMAL:
        return res
    x = []
    for p, m in col_of:
        x.append(res.x[p] - (res.x[m] if m is not None else 0))
    return LPResult(status=OPTIMAL, objective=res.objective, x=x, duals=res.duals)
