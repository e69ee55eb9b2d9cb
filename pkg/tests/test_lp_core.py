import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bornlp.boolean_core import ConstraintSpec, Register, requirement_to_lineq
from bornlp.errors import BornError, InfeasibleError, NumericalError
from bornlp.info import shannon
from bornlp.lp_core import (
    LinearSystem,
    affinely_independent,
    build_system,
    caratheodory,
    centroid,
    centroid_estimate,
    enumerate_vertices,
    feasible,
    forced_zeros,
    maxent,
    simplex_from_weights,
)

import gen
from oracles import grid_maxent, rational_vertices


def _triplet():
    reg = Register(2)
    specs = [ConstraintSpec.req([1, 2], equals=[-1, -2])]
    return build_system(specs, reg)


def test_dependent_row_is_dropped():
    reg = Register(1)
    specs = [ConstraintSpec.req([1], Fraction(1, 3)), ConstraintSpec.req([-1], Fraction(2, 3))]
    sys_ = build_system(specs, reg)
    assert sys_.m == 2
    assert sys_.dropped == (1,)


def test_inconsistent_dependent_row_names_constraint():
    reg = Register(1)
    specs = [ConstraintSpec.req([1], Fraction(1, 3)), ConstraintSpec.req([-1], Fraction(1, 3))]
    with pytest.raises(InfeasibleError) as exc:
        build_system(specs, reg)
    assert exc.value.constraint_index == 1


def test_infeasible_nonnegativity():
    reg = Register(2)
    # P(x1) = 1 and P(x1 and x2) + P(x1 and not x2) ... forced negative mass
    rows = [np.ones(4), [0, 0, 1, 1], [1, 1, 0, 0]]
    with pytest.raises(InfeasibleError):
        LinearSystem.from_rows(rows, [1, 1, 1], reg)
    sys_ = LinearSystem.from_rows([np.ones(4), [1, -1, 0, 0]], [1, 2], reg)
    assert not feasible(sys_)
    with pytest.raises(InfeasibleError):
        enumerate_vertices(sys_)


def test_unconstrained_polytope_is_the_simplex():
    for n in (1, 2, 3):
        reg = Register(n)
        poly = enumerate_vertices(build_system([], reg))
        assert poly.n_vertices == reg.d
        assert poly.is_simplicial
        np.testing.assert_array_equal(poly.vertices, np.eye(reg.d))


def test_vertices_sorted_descending_lexicographic():
    poly = enumerate_vertices(_triplet())
    keys = [tuple(v) for v in poly.vertices]
    assert keys == sorted(keys, reverse=True)


def test_triplet_vertices_and_centroid():
    sys_ = _triplet()
    poly = enumerate_vertices(sys_)
    want = {(0, 1, 0, 0), (0, 0, 1, 0), (0.5, 0, 0, 0.5)}
    got = {tuple(np.round(v, 12)) for v in poly.vertices}
    assert got == want
    np.testing.assert_allclose(centroid(poly), [1 / 6, 1 / 3, 1 / 3, 1 / 6], atol=1e-12)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.integers(1, 3), st.integers(0, 2**31 - 1))
def test_vertices_satisfy_system(n, seed):
    g = np.random.Generator(np.random.PCG64(seed))
    d = 1 << n
    sys_ = gen.random_system(n, int(g.integers(0, d)), g)
    poly = enumerate_vertices(sys_)
    for v in poly.vertices:
        assert sys_.contains(v)
        # support size at most m at a basic solution
        assert np.count_nonzero(v > 1e-9) <= sys_.m
    assert affinely_independent(poly.vertices) == poly.is_simplicial or poly.n_vertices > d


def test_rational_oracle_on_small_random_systems():
    g = gen.rng(1)
    for _ in range(30):
        d = 4
        A = [[1] * d] + [[int(x) for x in g.integers(-2, 3, d)] for _ in range(int(g.integers(0, 3)))]
        p0 = [Fraction(int(x), 1) for x in g.integers(1, 5, d)]
        tot = sum(p0)
        p0 = [x / tot for x in p0]
        b = [sum(Fraction(a) * p for a, p in zip(row, p0)) for row in A]
        exact = rational_vertices(A, b)
        try:
            sys_ = LinearSystem.from_rows(A, [float(x) for x in b], Register(2))
        except InfeasibleError:
            pytest.fail("consistent system flagged inconsistent")
        poly = enumerate_vertices(sys_)
        got = sorted(tuple(np.round(v, 9)) for v in poly.vertices)
        want = sorted(tuple(round(float(x), 9) for x in v) for v in exact)
        assert got == want


def test_caratheodory_returns_affinely_independent_support():
    g = gen.rng(2)
    for _ in range(50):
        sys_ = gen.random_system(3, int(g.integers(0, 5)), g)
        poly = enumerate_vertices(sys_)
        w = g.dirichlet(np.ones(poly.n_vertices)) @ poly.vertices
        rep = caratheodory(poly, w)
        assert affinely_independent(rep.vertices)
        assert rep.r <= poly.affine_dim + 1
        assert np.all(rep.coords > 0)
        np.testing.assert_allclose(rep.point, w, atol=1e-9)


def test_caratheodory_at_vertex_is_pure():
    poly = enumerate_vertices(_triplet())
    rep = caratheodory(poly, poly.vertices[1])
    assert rep.r == 1
    np.testing.assert_allclose(rep.coords, [1.0])


def test_caratheodory_outside_raises():
    poly = enumerate_vertices(_triplet())
    with pytest.raises(NumericalError):
        caratheodory(poly, [0.25, 0.25, 0.25, 0.26])


def test_simplex_from_weights_keeps_zero_weights():
    poly = enumerate_vertices(_triplet())
    rep = simplex_from_weights(poly, [1.0, 0.0, 0.0])
    assert rep.r == 3
    with pytest.raises(NumericalError):
        simplex_from_weights(poly, [0.5, 0.6, -0.1])
    with pytest.raises(BornError):
        simplex_from_weights(poly, [1.0])


def test_maxent_triplet_matches_grid_oracle():
    sys_ = _triplet()
    poly = enumerate_vertices(sys_)
    sol = maxent(sys_, poly)
    ref = grid_maxent(poly.vertices)
    np.testing.assert_allclose(sol.distribution, ref, atol=1e-6)
    np.testing.assert_allclose(sol.distribution, [0.25] * 4, atol=1e-9)
    assert sol.entropy_bits == pytest.approx(2.0, abs=1e-9)
    assert sol.dual_entropy_bits == pytest.approx(sol.entropy_bits, abs=1e-7)


def test_maxent_pins_forced_zeros():
    reg = Register(2)
    specs = [ConstraintSpec.req([1, 2], 0), ConstraintSpec.req([-1], Fraction(1, 4))]
    sys_ = build_system(specs, reg)
    poly = enumerate_vertices(sys_)
    assert forced_zeros(poly) == (3,)
    sol = maxent(sys_, poly)
    np.testing.assert_allclose(sol.distribution, [1 / 8, 1 / 8, 3 / 4, 0], atol=1e-10)


def test_maxent_against_grid_on_random_systems():
    g = gen.rng(3)
    for _ in range(15):
        sys_ = gen.random_system(2, int(g.integers(1, 3)), g)
        poly = enumerate_vertices(sys_)
        if poly.n_vertices > 4:
            continue
        sol = maxent(sys_, poly)
        ref = grid_maxent(poly.vertices)
        assert sol.entropy_bits >= shannon(ref) - 1e-9
        np.testing.assert_allclose(sol.distribution, ref, atol=1e-5)


def test_centroid_exact_vs_monte_carlo_on_square():
    reg = Register(2)
    # P(x1) = 1/2 gives a square: product of two 1-simplices
    sys_ = build_system([ConstraintSpec.req([1], Fraction(1, 2))], reg)
    poly = enumerate_vertices(sys_)
    assert poly.n_vertices == 4 and not poly.is_simplicial
    exact = centroid(poly)
    np.testing.assert_allclose(exact, [0.25] * 4, atol=1e-12)
    mc = centroid_estimate(poly, "mc", samples=50_000, seed=5)
    assert mc.std_error > 0
    assert np.max(np.abs(mc.point - exact)) < 5 * mc.std_error + 1e-3


def test_centroid_unknown_method():
    reg = Register(2)
    poly = enumerate_vertices(build_system([ConstraintSpec.req([1], Fraction(1, 2))], reg))
    with pytest.raises(BornError):
        centroid(poly, "median")


def test_exact_rational_enumeration_all_pairs_of_literal_rows():
    rhs_values = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)]
    reg = Register(2)
    lits = [(1,), (-1,), (2,), (1, 2), (1, -2), (-1, 2)]
    for (l1, b1), (l2, b2) in itertools.combinations(itertools.product(lits, rhs_values), 2):
        specs = [ConstraintSpec.req(l1, b1), ConstraintSpec.req(l2, b2)]
        A = [[1] * 4] + [list(requirement_to_lineq(s, reg)[0].entries.astype(int)) for s in specs]
        exact = rational_vertices(A, [1, b1, b2])
        try:
            poly = enumerate_vertices(build_system(specs, reg))
        except InfeasibleError:
            assert exact is None
            continue
        assert exact is not None
        got = sorted(tuple(np.round(v, 9)) for v in poly.vertices)
        want = sorted(tuple(round(float(x), 9) for x in v) for v in exact)
        assert got == want
