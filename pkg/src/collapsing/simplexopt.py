"""Maxima of sum-of-even-powers over the collapsing constraint polytope.

The underlying question: over tuples (a_1, ..., a_{m-1}, 1) that are
k-collapsing (optionally also summing to zero), how large can
``sum a_i^(2p)`` get?  Sorting the variables in decreasing order is
harmless by symmetry, after which the k-collapsing condition reduces to
prefix/suffix sum constraints and the feasible set is a polytope whose
vertices carry the maximum of the convex objective.

``max_sq_balanced`` and ``max_pow_general`` return the closed-form values;
``vertex_oracle`` recomputes the maximum independently by exact
enumeration of the polytope vertices (active-set combinations over the
rationals) and is the reference the closed forms are tested against.
All arithmetic in this module is exact rational; there is no float path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import PreconditionError
from .linalg import solve_square

EXACT = "exact"
UPPER_BOUND_ONLY = "upper_bound_only"


@dataclass(frozen=True)
class OptResult:
    value: Fraction
    exactness: str  # EXACT | UPPER_BOUND_ONLY
    attaining_vertex: tuple | None = None  # coordinates sorted descending
    relaxation_t: Fraction | None = None  # interior argmax of the real relaxation


def _check_range(m: int, k: int, p: int, balanced: bool) -> None:
    if p < 1:
        raise PreconditionError("power must be a positive integer")
    if balanced or p == 1:
        if not 2 <= k <= m - 2:
            raise PreconditionError(f"need 2 <= k <= m-2, got k={k}, m={m}")
    else:
        if not 2 <= k <= Fraction(m + 1, 2):
            raise PreconditionError(f"need 2 <= k <= (m+1)/2 for p >= 2, got k={k}, m={m}")


def max_sq_balanced(m: int, k: int) -> OptResult:
    """Balanced case: the maximum of sum a_i^2 is exactly 1.

    Attained (given the sort order) only at (0, ..., 0, -1).
    """
    _check_range(m, k, 1, balanced=True)
    vertex = tuple([Fraction(0)] * (m - 2) + [Fraction(-1)])
    return OptResult(value=Fraction(1), exactness=EXACT, attaining_vertex=vertex)


def _vertex_all_equal(m: int, k: int) -> tuple:
    return tuple([Fraction(-1, k)] * (m - 1))


def _vertex_spike(m: int, k: int) -> tuple:
    return tuple([Fraction(k - 2, k)] + [Fraction(-1, k)] * (m - 2))


def _vertex_unit(m: int) -> tuple:
    return tuple([Fraction(0)] * (m - 2) + [Fraction(-1)])


def max_pow_general(m: int, k: int, p: int = 1) -> OptResult:
    """Unbalanced case closed forms.

    p = 1: piecewise exact for k < 2m/3; for k >= 2m/3 the two-block family
    of vertices has a real-relaxation maximum at a non-integral block size,
    so only an upper bound is reported (the oracle gives the exact value
    per instance).  p >= 2 needs k <= (m+1)/2, where that regime is empty.
    """
    _check_range(m, k, p, balanced=False)
    if p == 1 and 3 * k >= 2 * m:
        t0_num = (k - 1) ** 2 * (m - k - 1)
        t0_den = 2 * (2 * k - m - 1) * (m - k - 1) + (k - 1)
        t0 = Fraction(t0_num, t0_den)
        relax = Fraction((k - 1) ** 2, 4 * (m - k - 1) * (2 * k - m) * (m - k))
        return OptResult(
            value=max(Fraction(1), relax),
            exactness=UPPER_BOUND_ONLY,
            relaxation_t=t0,
        )
    if k == 2:
        flat = Fraction(m - 1, k ** (2 * p))
        if flat > 1:
            return OptResult(value=flat, exactness=EXACT, attaining_vertex=_vertex_all_equal(m, k))
        return OptResult(value=Fraction(1), exactness=EXACT, attaining_vertex=_vertex_unit(m))
    spiked = Fraction((k - 2) ** (2 * p) + m - 2, k ** (2 * p))
    if spiked > 1:
        return OptResult(value=spiked, exactness=EXACT, attaining_vertex=_vertex_spike(m, k))
    return OptResult(value=Fraction(1), exactness=EXACT, attaining_vertex=_vertex_unit(m))


# ---------------------------------------------------------------------------
# Independent oracle


def _constraints(m: int, k: int, balanced: bool):
    """Linear description of the sorted feasible set in a_1..a_{m-1}.

    Inequalities are rows (coeffs, rhs) meaning coeffs . a <= rhs:
    the sort order itself, and the prefix/suffix sum consequences of the
    k-collapsing condition on the m-tuple with a_m = 1:
      top (k-1)-sum <= 0,   bottom (k-1)-sum >= -2,
      top k-sum <= 1,       bottom k-sum >= -1.
    The balanced case adds the equality sum(a) = -1.
    """
    n = m - 1
    ineqs: list[tuple[list[Fraction], Fraction]] = []
    for i in range(n - 1):
        row = [Fraction(0)] * n
        row[i], row[i + 1] = Fraction(-1), Fraction(1)
        ineqs.append((row, Fraction(0)))

    def prefix(j: int, sign: int, rhs) -> None:
        row = [Fraction(0)] * n
        for i in range(j):
            row[i] = Fraction(sign)
        ineqs.append((row, Fraction(rhs)))

    def suffix(j: int, sign: int, rhs) -> None:
        row = [Fraction(0)] * n
        for i in range(n - j, n):
            row[i] = Fraction(sign)
        ineqs.append((row, Fraction(rhs)))

    prefix(k - 1, +1, 0)   # largest k-1 entries plus a_m stay within 1
    suffix(k - 1, -1, 2)   # smallest k-1 entries plus a_m stay within -1
    prefix(k, +1, 1)       # largest k entries among a_1..a_{m-1}
    suffix(k, -1, 1)       # smallest k entries among a_1..a_{m-1}
    eqs = []
    if balanced:
        eqs.append(([Fraction(1)] * n, Fraction(-1)))
    return ineqs, eqs


def vertex_oracle(m: int, k: int, p: int = 1, balanced: bool = False) -> OptResult:
    """Exact maximum by enumerating polytope vertices over the rationals.

    Every vertex is the solution of some maximal set of active constraints;
    we solve all square active-set systems, keep the feasible solutions, and
    maximise the objective over them.  Independent of the closed forms.
    """
    if m > 16:
        raise PreconditionError("vertex enumeration capped at m = 16")
    _check_range(m, k, p, balanced=balanced)
    ineqs, eqs = _constraints(m, k, balanced)
    n = m - 1
    need = n - len(eqs)
    vertices: set[tuple] = set()
    for active in combinations(range(len(ineqs)), need):
        rows = [eq[0] for eq in eqs] + [ineqs[i][0] for i in active]
        rhs = [eq[1] for eq in eqs] + [ineqs[i][1] for i in active]
        sol = solve_square(rows, rhs)
        if sol is None:
            continue
        if all(
            sum(c * x for c, x in zip(row, sol)) <= b for row, b in ineqs
        ):
            vertices.add(tuple(sol))
    if not vertices:
        raise PreconditionError("constraint polytope is empty")
    best_value = None
    best_vertex = None
    for v in sorted(vertices):
        value = sum(x ** (2 * p) for x in v)
        if best_value is None or value > best_value:
            best_value = value
            best_vertex = v
    return OptResult(value=best_value, exactness=EXACT, attaining_vertex=best_vertex)


def oracle_grid(m_values, p_values=(1,), include_balanced=True):
    """Rows (m, k, p, balanced, closed_form, oracle, exactness) for the CLI."""
    rows = []
    for m in m_values:
        for k in range(2, m - 1):
            for p in p_values:
                if p == 1 or 2 * k <= m + 1:
                    closed = max_pow_general(m, k, p)
                    oracle = vertex_oracle(m, k, p, balanced=False)
                    rows.append((m, k, p, False, closed.value, oracle.value, closed.exactness))
            if include_balanced:
                closed_b = max_sq_balanced(m, k)
                oracle_b = vertex_oracle(m, k, 1, balanced=True)
                rows.append((m, k, 1, True, closed_b.value, oracle_b.value, closed_b.exactness))
    return rows
