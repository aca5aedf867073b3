"""Vector families and the collapsing/balancing condition verifiers.

A family is k-collapsing when every k-element index subset has a sum of
norm at most 1; strongly balancing when the full sum is the zero vector;
weakly balancing when the origin lies in the relative interior of the
convex hull.  All verifiers return ``ConditionReport`` certificates whose
witness indices are 1-based, matching the JSON certificate format.

The k-subset scan walks the revolving-door order, so each step updates the
running sum with one vector addition and one subtraction.  Exact-mode
comparisons are exact; float mode accepts ``1 + TOLERANCE``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, PreconditionError
from .lp import OPTIMAL, linprog_exact
from .scalars import TOLERANCE, Scalar, format_scalar, parse_scalar, snap_rational, vectors_exact
from .spaces import NormSpace, norm_eval, space_from_json, space_to_json
from .subsets import gray_flips, lex_range, revolving_door, sample_subsets

FULL_COLLAPSE_MAX_M = 24  # 2^m enumeration guard


@dataclass(frozen=True)
class VectorFamily:
    space: NormSpace
    vectors: tuple

    def __post_init__(self):
        amb = self.space.ambient_dim
        for v in self.vectors:
            if len(v) != amb:
                raise DimensionMismatchError(
                    f"vector length {len(v)} != ambient dimension {amb}"
                )
        if not self.vectors:
            raise PreconditionError("a family needs at least one vector")

    @property
    def m(self) -> int:
        return len(self.vectors)

    def is_exact(self) -> bool:
        return vectors_exact(self.vectors) and self.space.is_exact()

    def norms(self) -> list:
        return [norm_eval(self.space, v) for v in self.vectors]


def make_family(space: NormSpace, vectors: Iterable[Sequence[Scalar]]) -> VectorFamily:
    return VectorFamily(space=space, vectors=tuple(tuple(v) for v in vectors))


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    holds: bool
    margin: Scalar
    witness: tuple | None = None  # 1-based sorted indices of a violating subset
    k: int | None = None
    sampled: bool = False
    exact: bool = True

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "k": self.k,
            "holds": self.holds,
            "witness": list(self.witness) if self.witness else None,
            "margin": format_scalar(self.margin),
            "sampled": self.sampled,
            "mode": "exact" if self.exact else "float",
        }


def _vec_add(a: list, b: Sequence[Scalar]) -> None:
    for i, x in enumerate(b):
        a[i] += x


def _vec_sub(a: list, b: Sequence[Scalar]) -> None:
    for i, x in enumerate(b):
        a[i] -= x


def _limit(exact: bool):
    return 1 if exact else 1.0 + TOLERANCE


def check_k_collapsing(
    family: VectorFamily,
    k: int,
    budget: int | None = None,
    seed: int | None = None,
    threads: int = 1,
) -> ConditionReport:
    """Scan all (or a seeded sample of) k-subset sums of the family.

    The report carries the worst subset-sum norm as ``margin`` and the
    lexicographically smallest violating subset as ``witness``; both are
    deterministic, also under the partitioned parallel scan.
    """
    m = family.m
    if not 1 <= k <= m:
        raise PreconditionError(f"need 1 <= k <= m, got k={k}, m={m}")
    total = comb(m, k)
    exact = family.is_exact()
    if budget is not None and total > budget:
        if seed is None:
            raise PreconditionError(
                f"C({m},{k}) = {total} exceeds the budget {budget}; provide a seed "
                "to run the sampled mode"
            )
        return _scan_sampled(family, k, budget, seed, exact)
    if threads > 1:
        return _scan_parallel(family, k, threads, exact)
    limit = _limit(exact)
    space, vectors = family.space, family.vectors
    running = [0] * len(vectors[0])
    current: set = set()
    worst = None
    witness = None
    first = True
    for subset in revolving_door(m, k):
        new = set(subset)
        if first:
            for i in new:
                _vec_add(running, vectors[i])
            first = False
        else:
            for i in new - current:
                _vec_add(running, vectors[i])
            for i in current - new:
                _vec_sub(running, vectors[i])
        current = new
        nrm = norm_eval(space, tuple(running))
        if worst is None or nrm > worst:
            worst = nrm
        if nrm > limit:
            cand = tuple(sorted(i + 1 for i in subset))
            if witness is None or cand < witness:
                witness = cand
    return ConditionReport(
        condition="k-collapsing",
        holds=witness is None,
        margin=worst,
        witness=witness,
        k=k,
        exact=exact,
    )


def _scan_chunk(family: VectorFamily, k: int, start: int, stop: int, exact: bool):
    limit = _limit(exact)
    space, vectors = family.space, family.vectors
    worst = None
    witness = None
    prev: tuple | None = None
    running = [0] * len(vectors[0])
    for subset in lex_range(start, stop, family.m, k):
        if prev is None:
            for i in subset:
                _vec_add(running, vectors[i])
        else:
            for i in set(subset) - set(prev):
                _vec_add(running, vectors[i])
            for i in set(prev) - set(subset):
                _vec_sub(running, vectors[i])
        prev = subset
        nrm = norm_eval(space, tuple(running))
        if worst is None or nrm > worst:
            worst = nrm
        if nrm > limit:
            cand = tuple(sorted(i + 1 for i in subset))
            if witness is None or cand < witness:
                witness = cand
    return worst, witness


def _scan_parallel(family: VectorFamily, k: int, threads: int, exact: bool) -> ConditionReport:
    """Partition lexicographic ranks into chunks; merge deterministically."""
    import multiprocessing as mp

    total = comb(family.m, k)
    threads = max(1, min(threads, total))
    bounds = [total * i // threads for i in range(threads + 1)]
    jobs = [
        (family, k, bounds[i], bounds[i + 1], exact)
        for i in range(threads)
        if bounds[i] < bounds[i + 1]
    ]
    with mp.Pool(processes=len(jobs)) as pool:
        parts = pool.starmap(_scan_chunk, jobs)
    worst = max((w for w, _ in parts if w is not None), default=None)
    witnesses = [w for _, w in parts if w is not None]
    witness = min(witnesses) if witnesses else None
    return ConditionReport(
        condition="k-collapsing",
        holds=witness is None,
        margin=worst,
        witness=witness,
        k=k,
        exact=exact,
    )


def _scan_sampled(family: VectorFamily, k: int, budget: int, seed: int, exact: bool) -> ConditionReport:
    limit = _limit(exact)
    space, vectors = family.space, family.vectors
    worst = None
    witness = None
    for subset in sample_subsets(family.m, k, budget, seed):
        s = [0] * len(vectors[0])
        for i in subset:
            _vec_add(s, vectors[i])
        nrm = norm_eval(space, tuple(s))
        if worst is None or nrm > worst:
            worst = nrm
        if nrm > limit:
            cand = tuple(sorted(i + 1 for i in subset))
            if witness is None or cand < witness:
                witness = cand
    return ConditionReport(
        condition="k-collapsing",
        holds=witness is None,
        margin=worst,
        witness=witness,
        k=k,
        sampled=True,
        exact=exact,
    )


def check_full_collapsing(family: VectorFamily) -> ConditionReport:
    """All nonempty subset sums, via the binary reflected Gray code."""
    m = family.m
    if m > FULL_COLLAPSE_MAX_M:
        raise PreconditionError(f"full collapsing enumeration capped at m = {FULL_COLLAPSE_MAX_M}")
    exact = family.is_exact()
    limit = _limit(exact)
    space, vectors = family.space, family.vectors
    running = [0] * len(vectors[0])
    members = [False] * m
    worst = None
    witness = None
    for flip in gray_flips(m):
        if members[flip]:
            _vec_sub(running, vectors[flip])
        else:
            _vec_add(running, vectors[flip])
        members[flip] = not members[flip]
        nrm = norm_eval(space, tuple(running))
        if worst is None or nrm > worst:
            worst = nrm
        if nrm > limit:
            cand = tuple(i + 1 for i in range(m) if members[i])
            if witness is None or cand < witness:
                witness = cand
    return ConditionReport(
        condition="full-collapsing",
        holds=witness is None,
        margin=worst,
        witness=witness,
        exact=exact,
    )


def check_strong_balancing(family: VectorFamily) -> ConditionReport:
    exact = family.is_exact()
    total = [0] * len(family.vectors[0])
    for v in family.vectors:
        _vec_add(total, v)
    nrm = norm_eval(family.space, tuple(total))
    holds = nrm == 0 if exact else nrm <= TOLERANCE
    return ConditionReport(
        condition="strong-balancing", holds=holds, margin=nrm, exact=exact
    )


def check_weak_balancing(family: VectorFamily) -> ConditionReport:
    """Origin in the relative interior of the convex hull.

    The origin lies in the relative interior iff it admits a convex
    representation with all weights strictly positive, so we maximise the
    minimum weight by an exact LP; floats are rationalised first because
    relative-interior membership is not robust under rounding.
    """
    vectors = [[snap_rational(c) for c in v] for v in family.vectors]
    m = len(vectors)
    amb = len(vectors[0])
    # variables: lambda_1..m >= 0, mu >= 0; maximise mu
    cost = [Fraction(0)] * m + [Fraction(-1)]
    a_eq = [[vectors[j][i] for j in range(m)] + [Fraction(0)] for i in range(amb)]
    a_eq.append([Fraction(1)] * m + [Fraction(0)])
    b_eq = [Fraction(0)] * amb + [Fraction(1)]
    a_ub = [
        [Fraction(0)] * j + [Fraction(-1)] + [Fraction(0)] * (m - j - 1) + [Fraction(1)]
        for j in range(m)
    ]
    b_ub = [Fraction(0)] * m
    res = linprog_exact(cost, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq)
    if res.status != OPTIMAL:
        return ConditionReport(
            condition="weak-balancing", holds=False, margin=Fraction(0), exact=family.is_exact()
        )
    mu = res.x[m]
    return ConditionReport(
        condition="weak-balancing", holds=mu > 0, margin=mu, exact=family.is_exact()
    )


# ---------------------------------------------------------------------------
# Scalar families


@dataclass(frozen=True)
class ScalarFamily:
    values: tuple

    @property
    def m(self) -> int:
        return len(self.values)


def scalar_k_collapsing(values: Sequence[Scalar], k: int, want_witness: bool = False):
    """1-dimensional k-collapsing test.

    The extreme k-subset sums of reals are the k largest and the k smallest
    elements, so the check is a sort plus two prefix sums.  The witness (lex
    smallest violating index subset) is only materialised on demand.
    """
    m = len(values)
    if not 1 <= k <= m:
        raise PreconditionError(f"need 1 <= k <= m, got k={k}, m={m}")
    exact = vectors_exact([values])
    limit = _limit(exact)
    ordered = sorted(values)
    top = sum(ordered[-k:])
    bottom = sum(ordered[:k])
    margin = max(abs(top), abs(bottom))
    holds = margin <= limit
    witness = None
    if not holds and want_witness:
        for subset in lex_range(0, comb(m, k), m, k):
            if abs(sum(values[i] for i in subset)) > limit:
                witness = tuple(i + 1 for i in subset)
                break
    return holds, margin, witness


def normalisation_check(family: ScalarFamily, k: int):
    """Check the size cap forced on a k-collapsing family of reals.

    Whenever some |a_i| >= 1, every other entry must satisfy
    |a_j| <= 2 - |a_i| (hence <= 1).  Returns (ok, violations) with 1-based
    index pairs; a nonempty list would falsify the implementation, not the
    statement, for 2 <= k <= m-2.
    """
    values = family.values
    m = len(values)
    if not 2 <= k <= m - 2:
        raise PreconditionError(f"need 2 <= k <= m-2, got k={k}, m={m}")
    holds, margin, _ = scalar_k_collapsing(values, k)
    if not holds:
        raise PreconditionError(f"family is not {k}-collapsing (margin {margin})")
    violations = []
    for i, a in enumerate(values):
        if abs(a) >= 1:
            for j, b in enumerate(values):
                if j != i and abs(b) > 2 - abs(a):
                    violations.append((i + 1, j + 1))
    return not violations, violations


def far_partner_check(family: VectorFamily, indices: Sequence[int]) -> bool:
    """Every member of a norm->=1 subset with small sum has a far partner.

    ``indices`` are 1-based.  Preconditions (all norms >= 1 on the subset,
    subset sum of norm <= 1) are enforced; under them the answer must be
    True, so a False return signals an arithmetic bug.
    """
    idx = [i - 1 for i in indices]
    if len(idx) < 2:
        raise PreconditionError("need at least two indices")
    space, vectors = family.space, family.vectors
    exact = family.is_exact()
    lo = 1 if exact else 1.0 - TOLERANCE
    for i in idx:
        if norm_eval(space, vectors[i]) < lo:
            raise PreconditionError(f"vector {i + 1} has norm below 1")
    total = [0] * len(vectors[0])
    for i in idx:
        _vec_add(total, vectors[i])
    if norm_eval(space, tuple(total)) > _limit(exact):
        raise PreconditionError("subset sum has norm above 1")
    for i in idx:
        ok = False
        for j in idx:
            if j == i:
                continue
            diff = tuple(a - b for a, b in zip(vectors[i], vectors[j]))
            if norm_eval(space, diff) >= lo:
                ok = True
                break
        if not ok:
            return False
    return True


@dataclass(frozen=True)
class DiameterCentroidReport:
    diameter: Scalar
    centroid_norm: Scalar
    hypothesis_holds: bool
    conclusion_holds: bool
    dim: int


def diameter_centroid_check(family: VectorFamily) -> DiameterCentroidReport:
    """Diameter below 1 + 1/d must push the centroid norm above 1/d^2."""
    space, vectors = family.space, family.vectors
    d = space.dim
    exact = family.is_exact()
    lo = 1 if exact else 1.0 - TOLERANCE
    for i, v in enumerate(vectors):
        if norm_eval(space, v) < lo:
            raise PreconditionError(f"vector {i + 1} has norm below 1")
    diam = 0
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            diff = tuple(a - b for a, b in zip(vectors[i], vectors[j]))
            nrm = norm_eval(space, diff)
            if nrm > diam:
                diam = nrm
    total = [0] * len(vectors[0])
    for v in vectors:
        _vec_add(total, v)
    n = len(vectors)
    centroid = tuple(Fraction(c, n) if exact else c / n for c in total)
    cnorm = norm_eval(space, centroid)
    threshold = Fraction(1, d) if exact else 1.0 / d
    hypothesis = diam < 1 + threshold
    conclusion = cnorm > (Fraction(1, d * d) if exact else 1.0 / (d * d))
    return DiameterCentroidReport(
        diameter=diam,
        centroid_norm=cnorm,
        hypothesis_holds=hypothesis,
        conclusion_holds=conclusion,
        dim=d,
    )


# ---------------------------------------------------------------------------
# Branch and bound for the largest k-collapsing sub-multiset


def bnb_max_subfamily(candidates: VectorFamily, k: int):
    """Exact maximum k-collapsing sub-multiset by branch and bound.

    Candidates are scanned in descending-norm-then-lexicographic order;
    pruning combines the remaining-count bound with incremental k-subset
    feasibility (only subsets containing the newly added vector need
    checking).  Returns (indices into the candidate family, 1-based,
    in scan order of the optimum).
    """
    if not candidates.is_exact():
        raise PreconditionError("branch and bound requires exact arithmetic")
    space = candidates.space
    order = sorted(
        range(candidates.m),
        key=lambda i: (norm_eval(space, candidates.vectors[i]) * -1, candidates.vectors[i]),
    )
    vectors = [candidates.vectors[i] for i in order]
    n = len(vectors)
    use_numpy = space.kind == "lp" and space.p == math.inf and all(
        isinstance(c, int) for v in vectors for c in v
    )
    if use_numpy:
        chosen = _bnb_linf_int(vectors, k)
    else:
        chosen = _bnb_generic(space, vectors, k)
    return tuple(sorted(order[i] + 1 for i in chosen))


def _bnb_linf_int(vectors, k: int):
    import numpy as np

    n = len(vectors)
    d = len(vectors[0])
    arr = np.array(vectors, dtype=np.int64)
    # sums[j] holds all j-subset sums of the current prefix set, j < k
    sums = [np.zeros((1, d), dtype=np.int64)] + [
        np.zeros((0, d), dtype=np.int64) for _ in range(k - 1)
    ]
    best: list[int] = []
    stack: list[int] = []

    def extend(start: int) -> None:
        nonlocal best
        if len(stack) > len(best):
            best = stack.copy()
        for c in range(start, n):
            if len(stack) + (n - c) <= len(best):
                break
            v = arr[c]
            if sums[k - 1].shape[0] and not (np.abs(sums[k - 1] + v).max(axis=1) <= 1).all():
                continue
            saved = [s.shape[0] for s in sums]
            for j in range(k - 1, 0, -1):
                sums[j] = np.concatenate([sums[j], sums[j - 1] + v])
            stack.append(c)
            extend(c + 1)
            stack.pop()
            for j in range(1, k):
                sums[j] = sums[j][: saved[j]]

    extend(0)
    return best


def _bnb_generic(space, vectors, k: int):
    n = len(vectors)
    d = len(vectors[0])
    zero = tuple(0 for _ in range(d))
    sums: list[list[tuple]] = [[zero]] + [[] for _ in range(k - 1)]
    best: list[int] = []
    stack: list[int] = []
    limit = 1  # exact mode enforced by the caller

    def feasible(v) -> bool:
        for s in sums[k - 1]:
            total = tuple(a + b for a, b in zip(s, v))
            if norm_eval(space, total) > limit:
                return False
        return True

    def extend(start: int) -> None:
        nonlocal best
        if len(stack) > len(best):
            best = stack.copy()
        for c in range(start, n):
            if len(stack) + (n - c) <= len(best):
                break
            v = vectors[c]
            if not feasible(v):
                continue
            saved = [len(s) for s in sums]
            for j in range(k - 1, 0, -1):
                sums[j] = sums[j] + [tuple(a + b for a, b in zip(s, v)) for s in sums[j - 1]]
            stack.append(c)
            extend(c + 1)
            stack.pop()
            for j in range(1, k):
                del sums[j][saved[j]:]

    extend(0)
    return best


# ---------------------------------------------------------------------------
# JSON


def family_to_json(family: VectorFamily) -> dict:
    return {
        "space": space_to_json(family.space),
        "vectors": [[format_scalar(c) for c in v] for v in family.vectors],
    }


def family_from_json(desc: dict) -> VectorFamily:
    space = space_from_json(desc["space"])
    vectors = [tuple(parse_scalar(c) for c in v) for v in desc["vectors"]]
    return make_family(space, vectors)
