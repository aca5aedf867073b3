"""Finite-dimensional normed spaces: norms, dual norms, dual unit vectors.

Supported space kinds:

* ``lp``    -- the p-norms on R^d, 1 <= p <= inf (``math.inf`` for sup norm);
* ``slab``  -- the gauge of an origin-symmetric intersection of slabs
  ``{x : |<y_i, x>| <= 1}``, optionally capped by ``|<e', x>| <= lam``;
* ``l1sub`` -- a subspace of an ambient l1 space, vectors given in ambient
  coordinates;
* ``vpoly`` -- the gauge of a symmetric polytope given by its vertices
  (used only for the layered-cube construction).

A vector is a plain tuple of scalars of length ``ambient_dim``.  Dual unit
vectors on non-smooth norms use lowest-index tie-breaking so that all
certificates are deterministic; every downstream matrix bound is valid for
any choice of dual unit vector, so the tie-break is a convention, not a
correctness point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatchError, PreconditionError
from .linalg import dot, nullspace, rank_exact, rank_float, solve_consistent, transpose
from .lp import OPTIMAL, linprog_exact
from .scalars import (
    TOLERANCE,
    Scalar,
    format_scalar,
    is_exact,
    parse_scalar,
    snap_rational,
    sqrt_exact,
)

Vec = tuple


@dataclass(frozen=True)
class NormSpace:
    """Immutable description of a d-dimensional normed space."""

    dim: int
    kind: str  # "lp" | "slab" | "l1sub" | "vpoly"
    p: object = None
    functionals: tuple = ()
    cap: tuple | None = None  # (direction, bound)
    ambient: int | None = None
    basis: tuple = ()
    vertices: tuple = ()

    @property
    def ambient_dim(self) -> int:
        return self.ambient if self.kind == "l1sub" else self.dim

    def is_exact(self) -> bool:
        data = []
        if self.kind == "slab":
            data = [c for f in self.functionals for c in f]
            if self.cap:
                data += list(self.cap[0]) + [self.cap[1]]
        elif self.kind == "l1sub":
            data = [c for b in self.basis for c in b]
        elif self.kind == "vpoly":
            data = [c for v in self.vertices for c in v]
        return is_exact(data)


def lp_space(dim: int, p) -> NormSpace:
    if dim < 1:
        raise PreconditionError("dimension must be positive")
    if p != math.inf and not 1 <= p:
        raise PreconditionError("p must lie in [1, inf]")
    return NormSpace(dim=dim, kind="lp", p=p)


def linf_space(dim: int) -> NormSpace:
    return lp_space(dim, math.inf)


def slab_space(functionals: Sequence[Sequence[Scalar]], cap=None) -> NormSpace:
    funcs = tuple(tuple(f) for f in functionals)
    if not funcs:
        raise PreconditionError("need at least one slab functional")
    dim = len(funcs[0])
    if any(len(f) != dim for f in funcs):
        raise DimensionMismatchError("slab functionals of unequal length")
    rows = list(funcs)
    if cap is not None:
        direction, bound = tuple(cap[0]), cap[1]
        if len(direction) != dim:
            raise DimensionMismatchError("cap direction has wrong length")
        if bound <= 0:
            raise PreconditionError("cap bound must be positive")
        cap = (direction, bound)
        rows = rows + [direction]
    exact = is_exact(c for r in rows for c in r)
    r = rank_exact(rows) if exact else rank_float(rows)
    if r < dim:
        raise PreconditionError(
            "slab functionals (plus cap) do not span the space; the ball would be unbounded"
        )
    return NormSpace(dim=dim, kind="slab", functionals=funcs, cap=cap)


def l1_subspace(ambient: int, basis: Sequence[Sequence[Scalar]]) -> NormSpace:
    bas = tuple(tuple(b) for b in basis)
    if any(len(b) != ambient for b in bas):
        raise DimensionMismatchError("basis vectors must have ambient length")
    exact = is_exact(c for b in bas for c in b)
    r = rank_exact(bas) if exact else rank_float(bas)
    if r != len(bas):
        raise PreconditionError("l1-subspace basis is linearly dependent")
    return NormSpace(dim=len(bas), kind="l1sub", ambient=ambient, basis=bas)


def vpolytope_space(vertices: Sequence[Sequence[Scalar]]) -> NormSpace:
    verts = tuple(tuple(v) for v in vertices)
    dim = len(verts[0])
    vset = set(verts)
    if any(tuple(-c for c in v) not in vset for v in verts):
        raise PreconditionError("vertex set must be origin-symmetric")
    if rank_exact(verts) < dim:
        raise PreconditionError("polytope vertices do not span the space")
    return NormSpace(dim=dim, kind="vpoly", vertices=verts)


def _check_vec(space: NormSpace, x: Sequence[Scalar]) -> None:
    if len(x) != space.ambient_dim:
        raise DimensionMismatchError(
            f"vector length {len(x)} != ambient dimension {space.ambient_dim}"
        )


def _slab_rows(space: NormSpace):
    """Functionals normalised so the ball is {x : |<f,x>| <= 1} for each f."""
    rows = list(space.functionals)
    if space.cap is not None:
        direction, bound = space.cap
        rows.append(tuple(Fraction(c) / Fraction(bound) if is_exact([c, bound]) else c / bound
                          for c in direction))
    return rows


def _l1sub_membership(space: NormSpace, x: Sequence[Scalar]) -> None:
    cols = transpose(space.basis)
    if is_exact(x) and space.is_exact():
        if solve_consistent(cols, list(x)) is None:
            raise PreconditionError("vector lies outside the l1 subspace")
    else:
        import numpy as np

        a = np.asarray(cols, dtype=float)
        xv = np.asarray(x, dtype=float)
        sol, *_ = np.linalg.lstsq(a, xv, rcond=None)
        if np.linalg.norm(a @ sol - xv) > TOLERANCE * (1.0 + np.linalg.norm(xv)):
            raise PreconditionError("vector lies outside the l1 subspace (float tolerance)")


def norm_eval(space: NormSpace, x: Sequence[Scalar]) -> Scalar:
    """Evaluate the norm of ``x``; exact when the data is rational."""
    _check_vec(space, x)
    if space.kind == "lp":
        p = space.p
        if p == math.inf:
            return max((abs(c) for c in x), default=0)
        if p == 1:
            return sum(abs(c) for c in x)
        if p == 2:
            sq = sum(c * c for c in x)
            if is_exact(x):
                root = sqrt_exact(Fraction(sq))
                return root if root is not None else math.sqrt(sq)
            return math.sqrt(sq)
        return sum(abs(c) ** p for c in x) ** (1 / p)
    if space.kind == "slab":
        return max(abs(dot(f, x)) for f in _slab_rows(space))
    if space.kind == "l1sub":
        _l1sub_membership(space, x)
        return sum(abs(c) for c in x)
    if space.kind == "vpoly":
        return _vpoly_gauge(space, x)[0]
    raise ValueError(f"unknown space kind {space.kind}")


def _vpoly_gauge(space: NormSpace, x: Sequence[Scalar]):
    """Gauge of the vertex polytope via the exact mass-minimising LP.

    Returns (gauge, dual functional) where the functional y satisfies
    <y, x> = gauge and max_v <y, v> = 1.
    """
    exact_input = is_exact(x)
    xr = [snap_rational(c) for c in x]
    if all(c == 0 for c in xr):
        zero = Fraction(0) if exact_input else 0.0
        return zero, None
    verts = space.vertices
    a_eq = [[Fraction(v[i]) for v in verts] for i in range(space.dim)]
    res = linprog_exact([Fraction(1)] * len(verts), a_eq=a_eq, b_eq=xr)
    if res.status != OPTIMAL:
        raise PreconditionError("gauge LP infeasible: vertices do not span the space")
    gauge = res.objective
    y = res.duals
    if not exact_input:
        gauge = float(gauge)
        y = None if y is None else tuple(float(c) for c in y)
    else:
        y = None if y is None else tuple(y)
    return gauge, y


def dual_norm_eval(space: NormSpace, f: Sequence[Scalar]) -> Scalar:
    """Norm of the functional ``f`` (acting by the standard pairing)."""
    _check_vec(space, f)
    if space.kind == "lp":
        p = space.p
        if p == math.inf:
            return norm_eval(lp_space(space.dim, 1), f)
        if p == 1:
            return norm_eval(lp_space(space.dim, math.inf), f)
        q = p / (p - 1) if p != 2 else 2
        return norm_eval(lp_space(space.dim, q), f)
    if space.kind == "slab":
        # Dual ball of an intersection of slabs is the convex hull of the
        # +- functionals: minimise total |coefficient| of a decomposition.
        rows = _slab_rows(space)
        exact_input = is_exact(f) and space.is_exact()
        fr = [snap_rational(c) for c in f]
        n = len(rows)
        cols = [[snap_rational(row[i]) for row in rows] for i in range(space.dim)]
        # variables c_j split into +/- inside linprog_exact via free vars:
        # min sum t_j with -t_j <= c_j <= t_j is equivalent to splitting.
        cost = [Fraction(1)] * (2 * n)
        a_eq = [
            [cols[i][j] for j in range(n)] + [-cols[i][j] for j in range(n)]
            for i in range(space.dim)
        ]
        res = linprog_exact(cost, a_eq=a_eq, b_eq=fr)
        if res.status != OPTIMAL:
            raise PreconditionError("functional outside the span of the slab functionals")
        return res.objective if exact_input else float(res.objective)
    if space.kind == "l1sub":
        # ||f|_X||* = min over w in the annihilator of X of ||f + w||_inf.
        exact_input = is_exact(f) and space.is_exact()
        fr = [snap_rational(c) for c in f]
        ann = nullspace([[snap_rational(c) for c in b] for b in space.basis])
        n_amb, n_ann = space.ambient, len(ann)
        # variables: w coefficients (free), t >= 0; minimise t
        cost = [Fraction(0)] * n_ann + [Fraction(1)]
        a_ub = []
        b_ub = []
        for i in range(n_amb):
            row_w = [ann[j][i] for j in range(n_ann)]
            a_ub.append(row_w + [Fraction(-1)])
            b_ub.append(-fr[i])
            a_ub.append([-c for c in row_w] + [Fraction(-1)])
            b_ub.append(fr[i])
        res = linprog_exact(cost, a_ub=a_ub, b_ub=b_ub, nonneg=[False] * n_ann + [True])
        if res.status != OPTIMAL:
            raise PreconditionError("dual-norm LP failed")
        return res.objective if exact_input else float(res.objective)
    if space.kind == "vpoly":
        # support function over a symmetric vertex set
        return max(abs(dot(f, v)) for v in space.vertices)
    raise ValueError(f"unknown space kind {space.kind}")


def dual_unit_vector(space: NormSpace, x: Sequence[Scalar]) -> Vec:
    """A functional f with ||f||* = 1 and <f, x> = ||x||.

    Non-smooth norms break ties at the lowest attaining index.
    """
    _check_vec(space, x)
    nrm = norm_eval(space, x)
    if nrm == 0:
        raise PreconditionError("the zero vector has no dual unit vector")
    if space.kind == "lp":
        p = space.p
        if p == math.inf:
            j = next(i for i, c in enumerate(x) if abs(c) == nrm)
            sign = 1 if x[j] > 0 else -1
            return tuple(sign if i == j else 0 for i in range(space.dim))
        if p == 1:
            return tuple((c > 0) - (c < 0) for c in x)
        if p == 2:
            return tuple(c / nrm for c in x)
        return tuple(
            ((c > 0) - (c < 0)) * abs(c) ** (p - 1) / nrm ** (p - 1) for c in x
        )
    if space.kind == "slab":
        rows = _slab_rows(space)
        j = next(i for i, f in enumerate(rows) if abs(dot(f, x)) == nrm)
        sign = 1 if dot(rows[j], x) > 0 else -1
        return tuple(sign * c for c in rows[j])
    if space.kind == "l1sub":
        return tuple((c > 0) - (c < 0) for c in x)
    if space.kind == "vpoly":
        gauge, y = _vpoly_gauge(space, x)
        if y is None:
            raise PreconditionError("gauge LP did not produce a dual certificate")
        return y
    raise ValueError(f"unknown space kind {space.kind}")


# ---------------------------------------------------------------------------
# JSON descriptors


def space_to_json(space: NormSpace) -> dict:
    if space.kind == "lp":
        if space.p == math.inf:
            return {"dim": space.dim, "kind": "linf"}
        return {"dim": space.dim, "kind": "lp", "p": format_scalar(space.p)}
    if space.kind == "slab":
        out = {
            "dim": space.dim,
            "kind": "slab",
            "functionals": [[format_scalar(c) for c in f] for f in space.functionals],
        }
        if space.cap is not None:
            out["cap"] = {
                "direction": [format_scalar(c) for c in space.cap[0]],
                "bound": format_scalar(space.cap[1]),
            }
        return out
    if space.kind == "l1sub":
        return {
            "dim": space.dim,
            "kind": "l1sub",
            "ambient": space.ambient,
            "basis": [[format_scalar(c) for c in b] for b in space.basis],
        }
    if space.kind == "vpoly":
        return {
            "dim": space.dim,
            "kind": "vpoly",
            "vertices": [[format_scalar(c) for c in v] for v in space.vertices],
        }
    raise ValueError(space.kind)


def space_from_json(desc: dict) -> NormSpace:
    kind = desc["kind"]
    if kind == "linf":
        return linf_space(desc["dim"])
    if kind == "lp":
        p = desc.get("p", 2)
        if p in ("inf", "infinity"):
            p = math.inf
        else:
            p = parse_scalar(p)
        return lp_space(desc["dim"], p)
    if kind == "slab":
        cap = None
        if "cap" in desc and desc["cap"] is not None:
            cap = (
                tuple(parse_scalar(c) for c in desc["cap"]["direction"]),
                parse_scalar(desc["cap"]["bound"]),
            )
        return slab_space(
            [[parse_scalar(c) for c in f] for f in desc["functionals"]], cap=cap
        )
    if kind == "l1sub":
        return l1_subspace(
            desc["ambient"], [[parse_scalar(c) for c in b] for b in desc["basis"]]
        )
    if kind == "vpoly":
        return vpolytope_space([[parse_scalar(c) for c in v] for v in desc["vertices"]])
    raise ValueError(f"unknown space kind {kind!r}")
