"""Convex lattice and rational polytopes: hulls, faces, volumes, normal fans."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, gcd
from typing import Iterable, Sequence

from . import _dd
from .fan import Cone, Fan
from .lattice_linalg import as_fraction, clear_denominators, det, dot, rank


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class Face:
    """A face of a polytope, recorded by the indices of its vertices."""

    dim: int
    vertex_indices: frozenset[int]
    span_basis: tuple[tuple[Fraction, ...], ...]
    facet_indices: frozenset[int]


def _affine_rank(points) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


class Polytope:
    """Convex hull of finitely many rational points.

    Attributes
    ----------
    vertices : tuple of tuples of Fraction, sorted lexicographically.
    facets : tuple of (normal, offset); the polytope satisfies
        ``normal . x <= offset`` with ``normal`` a primitive outward integer vector.
    equations : tuple of (normal, offset) pinning down the affine hull.
    """

    def __init__(self, points: Iterable[Sequence], ambient_dim: int | None = None):
        pts = [tuple(as_fraction(x) for x in p) for p in points]
        if not pts:
            raise PolytopeError("a polytope needs at least one point")
        n = len(pts[0]) if ambient_dim is None else ambient_dim
        if any(len(p) != n for p in pts):
            raise PolytopeError("points have different dimensions")
        self.ambient_dim = n
        pts = sorted(set(pts))
        # homogenize: the polytope is the slice t = 1 of cone{(1, p)}
        gens = [clear_denominators((Fraction(1),) + p) for p in pts]
        normals, eqs = _dd.facets(gens, [], n + 1)
        facets = []
        # a single point has no facets (its only inequality is t >= 0)
        for f in (normals if len(eqs) < n else []):
            c0, c = f[0], f[1:]
            # c0 + c.x >= 0  <=>  (-c).x <= c0
            g = 0
            for x in c:
                g = gcd(g, x)
            facets.append((tuple(-x // g for x in c), Fraction(c0, g)))
        equations = []
        for e in eqs:
            e0, c = e[0], e[1:]
            equations.append((tuple(c), Fraction(-e0)))
        rays, _ = _dd.extreme_rays(normals, eqs, n + 1)
        verts = sorted(tuple(Fraction(x, r[0]) for x in r[1:]) for r in rays)
        self.vertices = tuple(verts)
        self.facets = tuple(sorted(facets))
        self.equations = tuple(equations)
        self.dim = len(verts[0]) - len(equations) if verts else -1
        self._faces = None

    # -- basic data --------------------------------------------------------
    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={[tuple(str(x) for x in v) for v in self.vertices]})"

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def contains(self, x) -> bool:
        x = [as_fraction(t) for t in x]
        return all(dot(c, x) == b for c, b in self.equations) and \
            all(dot(c, x) <= b for c, b in self.facets)

    def tight_facets(self, x) -> frozenset[int]:
        return frozenset(i for i, (c, b) in enumerate(self.facets) if dot(c, x) == b)

    # -- faces -------------------------------------------------------------
    def faces(self) -> tuple[Face, ...]:
        """All nonempty faces, the polytope itself included, by increasing dimension."""
        if self._faces is None:
            V = self.vertices
            inc = [frozenset(i for i, v in enumerate(V) if dot(c, v) == b)
                   for c, b in self.facets]
            full = frozenset(range(len(V)))
            sets = {full}
            frontier = [full]
            while frontier:
                nxt = []
                for s in frontier:
                    for z in inc:
                        t = s & z
                        if t and t not in sets:
                            sets.add(t)
                            nxt.append(t)
                frontier = nxt
            faces = []
            for s in sets:
                pts = [V[i] for i in sorted(s)]
                p0 = pts[0]
                span = tuple(tuple(a - b for a, b in zip(p, p0)) for p in pts[1:])
                d = _affine_rank(pts)
                fi = frozenset(j for j, z in enumerate(inc) if s <= z)
                faces.append(Face(d, s, span, fi))
            faces.sort(key=lambda f: (f.dim, sorted(f.vertex_indices)))
            self._faces = tuple(faces)
        return self._faces

    def faces_of_dim(self, k: int) -> list[Face]:
        return [f for f in self.faces() if f.dim == k]

    def edges(self) -> list[Face]:
        return self.faces_of_dim(1)


def convex_hull(points) -> Polytope:
    return Polytope(points)


def _triangulate(P: Polytope, face: Face, by_set: dict, cache: dict):
    """Pulling triangulation of a face from its lexicographically smallest vertex."""
    key = face.vertex_indices
    if key in cache:
        return cache[key]
    if face.dim == 0:
        out = [(min(key),)]
    else:
        v0 = min(key)  # vertices are sorted, so this is the lex-smallest
        out = []
        for sub in by_set.values():
            if sub.dim == face.dim - 1 and sub.vertex_indices < key and v0 not in sub.vertex_indices:
                for simplex in _triangulate(P, sub, by_set, cache):
                    out.append((v0,) + simplex)
    cache[key] = out
    return out


def triangulation(P: Polytope) -> list[tuple[int, ...]]:
    """Simplices (as vertex index tuples) of a pulling triangulation of P."""
    faces = P.faces()
    by_set = {f.vertex_indices: f for f in faces}
    top = faces[-1]
    return _triangulate(P, top, by_set, {})


def volume(P: Polytope) -> Fraction:
    """Euclidean volume; zero for polytopes of lower dimension."""
    n = P.ambient_dim
    if P.dim < n:
        return Fraction(0)
    if n == 0:
        return Fraction(1)
    V = P.vertices
    total = Fraction(0)
    for s in triangulation(P):
        v0 = V[s[0]]
        total += abs(det([[a - b for a, b in zip(V[i], v0)] for i in s[1:]]))
    return total / factorial(n)


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.ambient_dim != Q.ambient_dim:
        raise PolytopeError("Minkowski sum of polytopes in different dimensions")
    return Polytope([tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices],
                    P.ambient_dim)


def dilate(P: Polytope, t) -> Polytope:
    t = as_fraction(t)
    return Polytope([tuple(t * x for x in v) for v in P.vertices], P.ambient_dim)


def translate(P: Polytope, v) -> Polytope:
    return Polytope([tuple(a + as_fraction(b) for a, b in zip(p, v)) for p in P.vertices],
                    P.ambient_dim)


def mixed_volume(*polytopes: Polytope) -> Fraction:
    """Mixed volume normalized so that MV(P, ..., P) = volume(P).

    Computed by inclusion-exclusion over all partial Minkowski sums.
    """
    if len(polytopes) == 1 and not isinstance(polytopes[0], Polytope):
        polytopes = tuple(polytopes[0])
    n = len(polytopes)
    if n == 0 or any(P.ambient_dim != n for P in polytopes):
        raise PolytopeError("mixed volume needs exactly n polytopes in R^n")
    sums: dict[tuple[int, ...], Polytope] = {}
    total = Fraction(0)
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            if size == 1:
                Q = polytopes[S[0]]
            else:
                Q = minkowski_sum(sums[S[:-1]], polytopes[S[-1]])
            sums[S] = Q
            total += (-1) ** (n - size) * volume(Q)
    return total / factorial(n)


def support_value(P: Polytope, u) -> Fraction:
    """max over P of <x, u>."""
    u = [as_fraction(t) for t in u]
    if not any(u):
        raise PolytopeError("support value needs a nonzero direction")
    return max(dot(v, u) for v in P.vertices)


def maximizing_vertices(P: Polytope, u) -> frozenset[int]:
    vals = [dot(v, u) for v in P.vertices]
    m = max(vals)
    return frozenset(i for i, x in enumerate(vals) if x == m)


def normal_cone(P: Polytope, face: Face) -> Cone:
    """Cone of directions u whose maximizers on P contain the face."""
    normals = [P.facets[i][0] for i in sorted(face.facet_indices)]
    return Cone(normals, (), P.ambient_dim)


def normal_fan(P: Polytope) -> Fan:
    """Outer normal fan; ``fan.dual_faces`` maps each cone to its dual face."""
    if not P.is_full_dimensional:
        raise PolytopeError("normal fans are only built for full-dimensional polytopes")
    pairs = {}
    for face in P.faces():
        pairs[normal_cone(P, face)] = face
    F = Fan(pairs.keys(), P.ambient_dim, closed=True)
    F.dual_faces = pairs
    return F


def integral_length(P: Polytope, edge: Face) -> int:
    """Number of primitive lattice steps along a lattice edge."""
    if edge.dim != 1:
        raise PolytopeError("integral length is defined for edges only")
    a, b = (P.vertices[i] for i in sorted(edge.vertex_indices))
    if any(x.denominator != 1 for x in a + b):
        raise PolytopeError("edge endpoints are not lattice points")
    g = 0
    for x, y in zip(a, b):
        g = gcd(g, int(y - x))
    return g


def lattice_polytope(points) -> Polytope:
    P = Polytope(points)
    if not P.is_lattice:
        raise PolytopeError("vertices are not lattice points")
    return P


def simplex(n: int, scale=1) -> Polytope:
    """conv{0, scale*e_1, ..., scale*e_n}."""
    pts = [tuple(0 for _ in range(n))]
    for i in range(n):
        pts.append(tuple(scale if j == i else 0 for j in range(n)))
    return Polytope(pts)


def cube(n: int, side=1) -> Polytope:
    from itertools import product
    return Polytope(list(product([0, side], repeat=n)))


def segment(a, b) -> Polytope:
    return Polytope([a, b])


def polytope_from_inequalities(normals, offsets) -> Polytope:
    """The polytope {x : normal_r . x <= offset_r for all r}; must be bounded and nonempty."""
    normals = [tuple(as_fraction(x) for x in u) for u in normals]
    n = len(normals[0])
    # homogenized cone {(t, x) : t >= 0, t*offset - u.x >= 0}
    cons = [clear_denominators((as_fraction(b),) + tuple(-x for x in u))
            for u, b in zip(normals, offsets)]
    cons.append(tuple(int(i == 0) for i in range(n + 1)))
    rays, lin = _dd.extreme_rays(cons, [], n + 1)
    if lin or any(r[0] == 0 for r in rays):
        raise PolytopeError("the inequalities define an unbounded polyhedron")
    if not rays:
        raise PolytopeError("the inequalities define an empty polytope")
    return Polytope([tuple(Fraction(x, r[0]) for x in r[1:]) for r in rays], n)
