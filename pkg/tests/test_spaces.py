import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from collapsing.errors import DimensionMismatchError, PreconditionError
from collapsing.linalg import dot
from collapsing.spaces import (
    dual_norm_eval,
    dual_unit_vector,
    l1_subspace,
    linf_space,
    lp_space,
    norm_eval,
    slab_space,
    space_from_json,
    space_to_json,
    vpolytope_space,
)

rational = st.fractions(min_value=F(-4), max_value=F(4), max_denominator=5)


class TestNormEval:
    def test_sup_norm(self):
        assert norm_eval(linf_space(2), (1, -1)) == 1

    def test_euclidean_pythagorean(self):
        assert norm_eval(lp_space(2, 2), (3, 4)) == 5

    def test_slab_gauge(self):
        space = slab_space([(1, 0), (0, 1)])
        assert norm_eval(space, (F(1, 2), -2)) == 2

    def test_slab_gauge_brute_force_boundary(self):
        # scale x onto the boundary: x / norm must have unit gauge
        space = slab_space([(1, 0), (0, 1), (1, 1)])
        x = (F(3), F(-2))
        nrm = norm_eval(space, x)
        scaled = tuple(c / nrm for c in x)
        assert norm_eval(space, scaled) == 1

    def test_l1_subspace_norm(self):
        space = l1_subspace(3, [(1, -1, 0), (0, 0, 1)])
        assert norm_eval(space, (2, -2, 3)) == 7

    def test_l1_subspace_rejects_outsiders(self):
        space = l1_subspace(3, [(1, -1, 0)])
        with pytest.raises(PreconditionError):
            norm_eval(space, (1, 1, 0))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            norm_eval(linf_space(2), (1, 2, 3))

    def test_lp_general(self):
        assert abs(norm_eval(lp_space(2, 3), (1.0, 1.0)) - 2 ** (1 / 3)) < 1e-12


class TestDualUnitVector:
    def test_euclidean_self_dual(self):
        assert dual_unit_vector(lp_space(2, 2), (3, 4)) == (F(3, 5), F(4, 5))

    def test_l1_sign_functional(self):
        f = dual_unit_vector(lp_space(2, 1), (1, -2))
        assert f == (1, -1)
        assert dot(f, (1, -2)) == 3
        assert dual_norm_eval(lp_space(2, 1), f) == 1

    def test_sup_lowest_index_tie_break(self):
        assert dual_unit_vector(linf_space(2), (2, 2)) == (1, 0)

    def test_zero_vector_rejected(self):
        with pytest.raises(PreconditionError):
            dual_unit_vector(linf_space(2), (0, 0))

    def test_slab_dual_vector(self):
        space = slab_space([(1, 0), (0, 1)])
        f = dual_unit_vector(space, (F(1, 2), -2))
        assert dot(f, (F(1, 2), -2)) == 2
        assert dual_norm_eval(space, f) == 1


class TestDualNormEval:
    def test_l1_dual_is_sup(self):
        assert dual_norm_eval(lp_space(2, 1), (1, -1)) == 1

    def test_euclidean_dual(self):
        assert dual_norm_eval(lp_space(2, 2), (3, 4)) == 5

    def test_slab_decomposition(self):
        space = slab_space([(1, 0), (0, 1)])
        assert dual_norm_eval(space, (2, 3)) == 5

    def test_slab_crosscheck_by_boundary_sampling(self):
        space = slab_space([(1, 0), (0, 1)])
        f = (2, 3)
        # sup of <f, x> over unit-ball corners of the square
        corners = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        assert max(dot(f, c) for c in corners) == dual_norm_eval(space, f)


SPACES = [
    lp_space(2, 1),
    lp_space(3, 1),
    linf_space(2),
    linf_space(3),
    slab_space([(1, 0), (0, 1)]),
    slab_space([(1, 0), (1, 1), (0, 1)]),
]


@given(st.integers(0, len(SPACES) - 1), st.data())
@settings(max_examples=150, deadline=None)
def test_duality_identities(space_index, data):
    space = SPACES[space_index]
    x = tuple(
        data.draw(st.lists(rational, min_size=space.dim, max_size=space.dim))
    )
    if all(c == 0 for c in x):
        return
    f = dual_unit_vector(space, x)
    assert dot(f, x) == norm_eval(space, x)
    assert dual_norm_eval(space, f) == 1


@given(st.integers(0, len(SPACES) - 1), st.data())
@settings(max_examples=150, deadline=None)
def test_pairing_inequality(space_index, data):
    space = SPACES[space_index]
    draw_vec = st.lists(rational, min_size=space.dim, max_size=space.dim)
    f = tuple(data.draw(draw_vec))
    x = tuple(data.draw(draw_vec))
    assert abs(dot(f, x)) <= dual_norm_eval(space, f) * norm_eval(space, x)


@given(st.integers(0, len(SPACES) - 1), st.data())
@settings(max_examples=150, deadline=None)
def test_norm_axioms(space_index, data):
    space = SPACES[space_index]
    draw_vec = st.lists(rational, min_size=space.dim, max_size=space.dim)
    x = tuple(data.draw(draw_vec))
    y = tuple(data.draw(draw_vec))
    t = data.draw(rational)
    nx, ny = norm_eval(space, x), norm_eval(space, y)
    assert (nx == 0) == all(c == 0 for c in x)
    assert norm_eval(space, tuple(a + b for a, b in zip(x, y))) <= nx + ny
    assert norm_eval(space, tuple(t * c for c in x)) == abs(t) * nx


LP_SPACES = [
    vpolytope_space([(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)]),
    l1_subspace(3, [(1, -1, 0), (1, 1, 1)]),
]


@given(st.integers(0, 1), st.data())
@settings(max_examples=40, deadline=None)
def test_lp_backed_spaces_norm_axioms(space_index, data):
    space = LP_SPACES[space_index]
    small = st.fractions(min_value=F(-2), max_value=F(2), max_denominator=3)
    if space.kind == "l1sub":
        # draw inside the subspace
        def draw_vec():
            c = (data.draw(small), data.draw(small))
            return tuple(
                c[0] * b0 + c[1] * b1 for b0, b1 in zip(space.basis[0], space.basis[1])
            )
    else:
        def draw_vec():
            return tuple(data.draw(small) for _ in range(space.dim))

    x, y = draw_vec(), draw_vec()
    t = data.draw(small)
    nx, ny = norm_eval(space, x), norm_eval(space, y)
    assert (nx == 0) == all(c == 0 for c in x)
    assert norm_eval(space, tuple(a + b for a, b in zip(x, y))) <= nx + ny
    assert norm_eval(space, tuple(t * c for c in x)) == abs(t) * nx
    if nx != 0:
        f = dual_unit_vector(space, x)
        assert dot(f, x) == nx
        assert dual_norm_eval(space, f) == 1


def test_euclidean_float_duality_within_tolerance():
    space = lp_space(3, 2)
    x = (1.0, 2.0, 2.5)
    f = dual_unit_vector(space, x)
    assert abs(dot(f, x) - norm_eval(space, x)) < 1e-9 * norm_eval(space, x)
    assert abs(dual_norm_eval(space, f) - 1.0) < 1e-9


def test_slab_requires_spanning():
    with pytest.raises(PreconditionError):
        slab_space([(1, 0, 0), (0, 1, 0)])
    # a cap completing the span is accepted
    slab_space([(1, 0, 0), (0, 1, 0)], cap=((0, 0, 1), 2))


def test_vpolytope_gauge_and_dual():
    hexagon = vpolytope_space([(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)])
    assert norm_eval(hexagon, (1, 1)) == 1
    assert norm_eval(hexagon, (1, -1)) == 2
    y = dual_unit_vector(hexagon, (1, -1))
    assert dot(y, (1, -1)) == 2
    assert dual_norm_eval(hexagon, y) == 1


def test_json_roundtrip():
    spaces = [
        linf_space(4),
        lp_space(3, 2),
        slab_space([(1, 0), (0, 1)], cap=((1, 1), F(3, 2))),
        l1_subspace(3, [(1, -1, 0), (0, 0, 1)]),
        vpolytope_space([(1, 0), (-1, 0), (0, 1), (0, -1)]),
    ]
    for s in spaces:
        assert space_from_json(space_to_json(s)) == s
