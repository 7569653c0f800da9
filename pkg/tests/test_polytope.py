import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropring.fan import is_complete
from tropring.lattice_linalg import dot
from tropring.polytope import (
    Polytope,
    PolytopeError,
    cube,
    dilate,
    integral_length,
    minkowski_sum,
    mixed_volume,
    normal_fan,
    polytope_from_inequalities,
    simplex,
    support_value,
    translate,
    triangulation,
    volume,
)

points2 = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=3, max_size=8)
points3 = st.lists(st.tuples(*[st.integers(-2, 2)] * 3), min_size=4, max_size=7)


def full(points, n):
    P = Polytope(points, n)
    return P if P.is_full_dimensional else None


def shoelace(P):
    """Area of a polygon by angular sorting around its vertex centroid."""
    V = P.vertices
    cx = sum(v[0] for v in V) / len(V)
    cy = sum(v[1] for v in V) / len(V)

    def quadrant_key(v):
        # exact angular order: half-plane, then cross-product comparison
        x, y = v[0] - cx, v[1] - cy
        return (0 if (y > 0 or (y == 0 and x > 0)) else 1)

    import functools

    def cmp(a, b):
        ha, hb = quadrant_key(a), quadrant_key(b)
        if ha != hb:
            return ha - hb
        cross = (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx)
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    ring = sorted(V, key=functools.cmp_to_key(cmp))
    s = Fraction(0)
    for a, b in zip(ring, ring[1:] + ring[:1]):
        s += a[0] * b[1] - a[1] * b[0]
    return abs(s) / 2


def test_hull_drops_interior_points():
    P = Polytope([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0)])
    assert P.vertices == ((0, 0), (0, 2), (2, 0), (2, 2))
    assert len(P.facets) == 4
    assert P.dim == 2 and P.is_lattice


def test_lower_dimensional_hulls():
    seg = Polytope([(0, 0, 0), (1, 1, 1), (2, 2, 2)])
    assert seg.dim == 1 and len(seg.vertices) == 2
    pt = Polytope([(3, 1)])
    assert pt.dim == 0 and pt.facets == ()
    assert volume(seg) == 0


def test_rational_vertices():
    P = Polytope([("1/2", 0), (0, "1/3"), (0, 0)])
    assert not P.is_lattice
    assert volume(P) == Fraction(1, 12)


def test_standard_volumes():
    assert volume(simplex(2)) == Fraction(1, 2)
    assert volume(simplex(3)) == Fraction(1, 6)
    assert volume(simplex(3, 2)) == Fraction(8, 6)
    assert volume(cube(3)) == 1
    assert volume(cube(4, 2)) == 16


def test_faces_of_cube():
    C = cube(3)
    counts = [len(C.faces_of_dim(k)) for k in range(4)]
    assert counts == [8, 12, 6, 1]


def test_triangulation_covers_volume():
    C = cube(3)
    simplices = triangulation(C)
    assert all(len(s) == 4 for s in simplices)
    assert volume(C) == 1


@settings(max_examples=60, deadline=None)
@given(points2)
def test_area_matches_shoelace(pts):
    P = full(pts, 2)
    if P is None:
        return
    assert volume(P) == shoelace(P)


@settings(max_examples=30, deadline=None)
@given(points3, st.integers(1, 3))
def test_dilation_scales_volume(pts, t):
    P = full(pts, 3)
    if P is None:
        return
    assert volume(dilate(P, t)) == t ** 3 * volume(P)
    assert volume(translate(P, (1, -2, 5))) == volume(P)


@settings(max_examples=30, deadline=None)
@given(points3)
def test_inequality_round_trip(pts):
    P = full(pts, 3)
    if P is None:
        return
    Q = polytope_from_inequalities([c for c, _ in P.facets], [b for _, b in P.facets])
    assert Q == P


def test_minkowski_sum():
    S = minkowski_sum(simplex(2), cube(2))
    assert S.vertices == ((0, 0), (0, 2), (1, 2), (2, 0), (2, 1))
    assert volume(S) == Fraction(7, 2)


@pytest.mark.parametrize("a,b,c,d", [(1, 1, 1, 1), (1, 2, 3, 4), (2, 5, 1, 3)])
def test_mixed_volume_of_boxes(a, b, c, d):
    A = Polytope(list(product([0, a], [0, b])))
    B = Polytope(list(product([0, c], [0, d])))
    assert mixed_volume(A, B) == Fraction(a * d + b * c, 2)


def test_mixed_volume_anchors():
    assert mixed_volume(simplex(2), simplex(2)) == Fraction(1, 2)
    assert mixed_volume(simplex(2, 2), simplex(2, 3)) == 3
    assert mixed_volume(cube(2), simplex(2)) == 1
    assert mixed_volume(simplex(3), cube(3), simplex(3)) == Fraction(1, 2)
    assert mixed_volume([simplex(3)] * 3) == Fraction(1, 6)


def test_mixed_volume_dimension_mismatch():
    with pytest.raises(PolytopeError):
        mixed_volume(simplex(2))


@settings(max_examples=25, deadline=None)
@given(points2, points2, st.integers(1, 3))
def test_mixed_volume_symmetric_and_linear(p1, p2, t):
    P, Q = Polytope(p1, 2), Polytope(p2, 2)
    m = mixed_volume(P, Q)
    assert m == mixed_volume(Q, P)
    assert mixed_volume(dilate(P, t), Q) == t * m
    assert mixed_volume(P, P) == volume(P)
    assert m >= 0


@settings(max_examples=15, deadline=None)
@given(points2, points2, points2)
def test_mixed_volume_additive(p1, p2, p3):
    P, Q, R = (Polytope(p, 2) for p in (p1, p2, p3))
    assert mixed_volume(minkowski_sum(P, Q), R) == mixed_volume(P, R) + mixed_volume(Q, R)


def test_support_values():
    C = cube(2)
    assert support_value(C, (1, 1)) == 2
    assert support_value(C, (-1, 0)) == 0
    assert support_value(simplex(2), (-1, -1)) == 0


@settings(max_examples=30, deadline=None)
@given(points2, points2, st.tuples(st.integers(-5, 5), st.integers(-5, 5)).filter(any))
def test_support_of_sum_is_sum_of_supports(p1, p2, u):
    P, Q = Polytope(p1, 2), Polytope(p2, 2)
    assert support_value(minkowski_sum(P, Q), u) == support_value(P, u) + support_value(Q, u)


def test_normal_fan_of_simplex():
    F = normal_fan(simplex(2))
    assert F.rays() == [(-1, 0), (0, -1), (1, 1)]  # outward normals
    assert len(F.maximal_cones()) == 3
    assert is_complete(F)


def test_normal_fan_covers_random_directions():
    rng = random.Random(7)
    P = Polytope([(0, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 3), (1, 1, 1)])
    F = normal_fan(P)
    assert is_complete(F)
    for _ in range(1000):
        u = tuple(rng.randint(-50, 50) for _ in range(3))
        if not any(u):
            continue
        hits = [c for c in F.maximal_cones() if c.contains(u)]
        assert hits
        # on each cone containing u, the dual vertex attains the support value
        for c in hits:
            (i,) = F.dual_faces[c].vertex_indices
            assert dot(P.vertices[i], u) == support_value(P, u)


def test_normal_fan_rejects_flat_polytope():
    with pytest.raises(PolytopeError):
        normal_fan(Polytope([(0, 0), (1, 1)]))


def test_integral_length():
    P = Polytope([(0, 0), (4, 2), (0, 3)])
    lengths = sorted(integral_length(P, e) for e in P.edges())
    assert lengths == [1, 2, 3]
