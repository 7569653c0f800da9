from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import line_cycle
from tropring.fan import Cone
from tropring.polytope import Polytope, cube, dilate, mixed_volume, simplex
from tropring.tropical_cycle import (
    CycleError,
    TropicalCycle,
    UnbalancedCycleError,
    add,
    bkk_number,
    degree,
    equivalent,
    fundamental_cycle,
    generic_vector,
    intersection_number_of_hypersurfaces,
    is_balanced,
    negate,
    point_cycle,
    refine,
    scalar_multiply,
    stable_intersection_number,
    stable_product,
    stellar_refinement,
    tropical_hypersurface,
    zero_cycle,
)


def rays_cycle(rays, weights, check=True):
    return TropicalCycle(2, 1, [(Cone([r], (), 2), w) for r, w in zip(rays, weights)], check=check)


AXES = [(1, 0), (-1, 0), (0, 1), (0, -1)]
LINE = tropical_hypersurface(simplex(2))

small_polygon = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=6) \
    .map(lambda pts: Polytope(pts, 2)).filter(lambda P: P.is_full_dimensional)


def test_balance_examples():
    assert is_balanced(rays_cycle([(-1, 0), (0, -1), (1, 1)], [1, 1, 1]))
    r = is_balanced(rays_cycle([(1, 0), (0, 1)], [1, 1], check=False))
    assert not r and r.cone == Cone.zero(2)
    assert not is_balanced(rays_cycle(AXES, [1, 1, 1, 2], check=False))
    assert is_balanced(rays_cycle(AXES, [3, 3, 5, 5]))


def test_unbalanced_input_is_rejected():
    with pytest.raises(UnbalancedCycleError):
        rays_cycle([(1, 0), (0, 1)], [1, 1])


def test_balance_uses_primitive_generators():
    # (2,1) is primitive; the weight, not the vector length, carries multiplicity
    assert is_balanced(rays_cycle([(2, 1), (-2, -1)], [3, 3]))
    assert is_balanced(rays_cycle([(1, 0), (0, 1), (-1, -2)], [1, 2, 1]))
    assert not is_balanced(rays_cycle([(1, 0), (0, 1), (-1, -2)], [1, 1, 1], check=False))


def test_hypersurface_examples():
    assert sorted((c.rays, w) for c, w in LINE.weighted_cones()) == \
        [(((-1, 0),), 1), (((0, -1),), 1), (((1, 1),), 1)]
    rect = tropical_hypersurface(Polytope([(0, 0), (2, 0), (0, 1), (2, 1)]))
    weights = {c.rays[0]: w for c, w in rect.weighted_cones()}
    assert weights == {(0, 1): 2, (0, -1): 2, (1, 0): 1, (-1, 0): 1}
    with pytest.raises(CycleError):
        tropical_hypersurface(Polytope([(0, 0), (3, 0)]))
    with pytest.raises(CycleError):
        tropical_hypersurface(Polytope([(0, 0), ("1/2", 0), (0, 1)]))


def test_addition_examples():
    assert add(LINE, negate(LINE)).is_zero()
    assert equivalent(LINE + LINE, scalar_multiply(2, LINE))
    S = add(line_cycle((1, 0)), line_cycle((0, 1)))
    assert sorted(c.rays[0] for c, _ in S.weighted_cones()) == sorted(AXES)
    assert all(w == 1 for _, w in S.weighted_cones())
    with pytest.raises(CycleError):
        add(LINE, point_cycle(2))


def test_equivalence_examples():
    split = TropicalCycle(2, 1, [(Cone([(1, 0)], (), 2), 1), (Cone([(-1, 0)], (), 2), 1)])
    assert equivalent(split, line_cycle((1, 0)))
    assert not equivalent(LINE, scalar_multiply(2, LINE))
    padded = TropicalCycle(2, 1, list(LINE.weighted_cones()) + [(Cone([(5, 1), (-5, -1)], (), 2), 0)])
    assert equivalent(padded, LINE)


def test_scalar_examples():
    assert equivalent(scalar_multiply(1, LINE), LINE)
    assert scalar_multiply(0, LINE).is_zero()
    neg = scalar_multiply(-2, LINE)
    assert is_balanced(neg)
    assert stable_intersection_number(neg, LINE).value == -2
    assert scalar_multiply(Fraction(1, 2), LINE).is_integral() is False


def test_intersection_examples():
    assert stable_intersection_number(LINE, LINE).value == 1
    assert stable_intersection_number(line_cycle((1, 0)), line_cycle((0, 1))).value == 1
    assert stable_intersection_number(scalar_multiply(2, LINE), scalar_multiply(2, LINE)).value == 4
    with pytest.raises(CycleError):
        stable_intersection_number(LINE, fundamental_cycle(2))


def test_intersection_with_lattice_index():
    # lines of slopes 1 and -1 meet with index |det [[1,1],[1,-1]]| = 2
    assert stable_intersection_number(line_cycle((1, 1)), line_cycle((1, -1))).value == 2


def test_intersection_report_is_deterministic():
    a = stable_intersection_number(LINE, LINE, seed=7)
    b = stable_intersection_number(LINE, LINE, seed=7)
    assert a == b
    assert a.vector == generic_vector(2, a.seed)
    assert sum(p.contribution for p in a.pairs) == a.value


def test_point_and_fundamental_cycles():
    assert stable_intersection_number(point_cycle(2, 3), fundamental_cycle(2, 2)).value == 6


def test_stable_product_plane_squared_is_line():
    plane = tropical_hypersurface(simplex(3))
    L = stable_product(plane, plane)
    assert L.cycle_dim == 1
    assert sorted(c.rays[0] for c, _ in L.support_cones()) == \
        [(-1, 0, 0), (0, -1, 0), (0, 0, -1), (1, 1, 1)]
    assert all(w == 1 for _, w in L.support_cones())
    assert degree(L, plane) == 1


def test_stable_product_with_zero_and_fundamental():
    assert stable_product(LINE, zero_cycle(2, 1)).is_zero()
    assert equivalent(stable_product(LINE, fundamental_cycle(2)), LINE)
    assert stable_product(LINE, LINE).cycle_dim == 0
    assert stable_product(LINE, LINE).degree() == 1


def test_hypersurface_intersections():
    sq = cube(2)
    assert intersection_number_of_hypersurfaces(simplex(2), simplex(2)) == 1
    assert intersection_number_of_hypersurfaces(simplex(2, 2), simplex(2, 3)) == 6
    assert intersection_number_of_hypersurfaces(sq, simplex(2)) == 2
    assert intersection_number_of_hypersurfaces(sq, simplex(2)) == \
        factorial(2) * mixed_volume(sq, simplex(2))
    assert intersection_number_of_hypersurfaces(simplex(3), cube(3), simplex(3)) == 3
    assert bkk_number(simplex(3), simplex(3), simplex(3)) == 1


@settings(max_examples=20, deadline=None)
@given(small_polygon, small_polygon)
def test_bkk_in_the_plane(P, Q):
    n = intersection_number_of_hypersurfaces(P, Q)
    assert n == 2 * mixed_volume(P, Q)
    assert n == intersection_number_of_hypersurfaces(Q, P)


@settings(max_examples=15, deadline=None)
@given(small_polygon, small_polygon, st.integers(1, 4))
def test_products_are_balanced_and_seed_independent(P, Q, seed):
    A, B = tropical_hypersurface(P), tropical_hypersurface(Q)
    assert is_balanced(A + B)
    assert is_balanced(scalar_multiply(-3, A))
    base = stable_intersection_number(A, B, 1).value
    assert stable_intersection_number(A, B, seed).value == base
    assert stable_intersection_number(A + B, B).value == base + stable_intersection_number(B, B).value


@settings(max_examples=15, deadline=None)
@given(small_polygon, st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(any))
def test_refinement_invariance(P, v):
    A = tropical_hypersurface(P)
    R = refine(A, [v])
    assert equivalent(R, A)
    for c in A.fan.cones_of_dim(1):
        S = stellar_refinement(A, c)
        assert equivalent(S, A)
    assert degree(R, LINE) == degree(A, LINE)


def test_stellar_refinement_of_two_cone():
    C = tropical_hypersurface(cube(3))
    sigma = C.weighted_cones()[0][0]
    S = stellar_refinement(C, sigma)
    assert len(S.weighted_cones()) > len(C.weighted_cones())
    assert equivalent(S, C)
    assert is_balanced(S)
