"""Rational polyhedral cones and fans."""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import _dd
from .lattice_linalg import (
    LinearAlgebraError,
    QuotientMap,
    _quotient_map,
    as_fraction,
    clear_denominators,
    dot,
    hermite_normal_form,
    primitive,
    primitive_generator,
    rank,
    saturate,
    solve,
)

log = logging.getLogger(__name__)


class FanError(ValueError):
    pass


def _project_out(v, lin_basis, gram_inv):
    """Orthogonal projection of an integer vector onto the complement of span(lin)."""
    if not lin_basis:
        return v
    c = [dot(l, v) for l in lin_basis]
    coef = [sum(gi * ci for gi, ci in zip(row, c)) for row in gram_inv]
    return [Fraction(x) - sum(k * l[i] for k, l in zip(coef, lin_basis))
            for i, x in enumerate(v)]


def _gram_inverse(basis):
    from .lattice_linalg import inverse
    G = [[dot(a, b) for b in basis] for a in basis]
    return inverse(G)


class Cone:
    """A rational polyhedral cone ``cone(rays) + span(lineality)`` in R^n.

    Cones are stored canonically: the lineality space by the Hermite basis of
    its saturated lattice, rays as sorted primitive vectors orthogonal to it.
    Two cones are equal iff they are equal as point sets.
    """

    __slots__ = ("ambient_dim", "rays", "lineality", "dim", "_hrep", "_faces", "_hash")

    def __init__(self, rays: Iterable = (), lineality: Iterable = (),
                 ambient_dim: int | None = None, *, _trusted: bool = False):
        rays = [clear_denominators(r) for r in rays]
        lineality = [clear_denominators(l) for l in lineality]
        if ambient_dim is None:
            if rays:
                ambient_dim = len(rays[0])
            elif lineality:
                ambient_dim = len(lineality[0])
            else:
                raise FanError("ambient dimension needed for a cone without generators")
        n = ambient_dim
        for v in rays + lineality:
            if len(v) != n:
                raise FanError(f"generator {v} does not live in R^{n}")
        rays = [r for r in rays if any(r)]
        self._hrep = None
        if not _trusted:
            normals, eqs = _dd.facets(rays, lineality, n)
            rays, lineality = _dd.extreme_rays(normals, eqs, n)
            self._hrep = (tuple(normals), tuple(eqs))
            lineality = hermite_normal_form(saturate(lineality, n), n) if lineality else []
            if lineality:
                ginv = _gram_inverse(lineality)
                rays = [primitive_generator(_project_out(r, lineality, ginv)) for r in rays]
            else:
                rays = [primitive(r) for r in rays]
        self.ambient_dim = n
        self.rays = tuple(sorted(set(tuple(r) for r in rays)))
        self.lineality = tuple(tuple(l) for l in lineality)
        self.dim = rank(list(self.rays) + list(self.lineality)) if (self.rays or self.lineality) else 0
        self._faces = None
        self._hash = hash((n, self.rays, self.lineality))

    # -- identity ----------------------------------------------------------
    def key(self):
        return (self.ambient_dim, self.dim, self.rays, self.lineality)

    def __eq__(self, other):
        return isinstance(other, Cone) and self.ambient_dim == other.ambient_dim and \
            self.rays == other.rays and self.lineality == other.lineality

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        if self.lineality:
            return f"Cone(rays={list(self.rays)}, lineality={list(self.lineality)})"
        return f"Cone(rays={list(self.rays)})"

    @classmethod
    def zero(cls, n: int) -> "Cone":
        return cls((), (), n, _trusted=True)

    @classmethod
    def full(cls, n: int) -> "Cone":
        return cls((), [tuple(int(i == j) for j in range(n)) for i in range(n)], n)

    @classmethod
    def from_inequalities(cls, inequalities, equations=(), ambient_dim: int | None = None):
        """The cone ``{x : a.x >= 0, e.x = 0}``."""
        inequalities = [clear_denominators(a) for a in inequalities]
        equations = [clear_denominators(e) for e in equations]
        n = ambient_dim if ambient_dim is not None else \
            len((inequalities or equations)[0])
        rays, lin = _dd.extreme_rays(inequalities, equations, n)
        return cls(rays, lin, n)

    # -- H-representation --------------------------------------------------
    @property
    def hrep(self):
        """(facet normals, equations) with the cone = {f.x >= 0, e.x = 0}."""
        if self._hrep is None:
            normals, eqs = _dd.facets(list(self.rays), list(self.lineality), self.ambient_dim)
            self._hrep = (tuple(normals), tuple(eqs))
        return self._hrep

    @property
    def facet_normals(self):
        return self.hrep[0]

    @property
    def equations(self):
        return self.hrep[1]

    def generators(self):
        return list(self.rays) + list(self.lineality)

    def span_basis(self):
        """Integer basis of the lattice span(cone) ∩ Z^n."""
        return saturate(self.generators(), self.ambient_dim)

    def is_pointed(self) -> bool:
        return not self.lineality

    def is_simplicial(self) -> bool:
        return self.is_pointed() and len(self.rays) == self.dim

    # -- point queries -------------------------------------------------------
    def contains(self, x) -> bool:
        x = [as_fraction(t) for t in x]
        normals, eqs = self.hrep
        return all(dot(e, x) == 0 for e in eqs) and all(dot(f, x) >= 0 for f in normals)

    def contains_in_relative_interior(self, x) -> bool:
        x = [as_fraction(t) for t in x]
        normals, eqs = self.hrep
        return all(dot(e, x) == 0 for e in eqs) and all(dot(f, x) > 0 for f in normals)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(r) for r in other.rays) and all(
            self.contains(l) and self.contains([-t for t in l]) for l in other.lineality)

    def relative_interior_point(self) -> tuple[Fraction, ...]:
        """Sum of the ray generators plus the sum of the lineality basis."""
        if self.dim == 0:
            raise FanError("the zero cone has no relative interior point")
        n = self.ambient_dim
        return tuple(Fraction(sum(g[i] for g in self.generators())) for i in range(n))

    # -- cone operations -----------------------------------------------------
    def intersection(self, other: "Cone") -> "Cone":
        if self.ambient_dim != other.ambient_dim:
            raise FanError("ambient dimensions differ")
        if self == other:
            return self
        n1, e1 = self.hrep
        n2, e2 = other.hrep
        return Cone.from_inequalities(list(n1) + list(n2), list(e1) + list(e2),
                                      self.ambient_dim)

    def split(self, normal) -> list["Cone"]:
        """Pieces of the cone on the two sides of the hyperplane normal.x = 0.

        Returns ``[self]`` when the hyperplane does not cut the cone.
        """
        vals = [dot(normal, r) for r in self.rays]
        lvals = [dot(normal, l) for l in self.lineality]
        if not any(lvals) and (all(v >= 0 for v in vals) or all(v <= 0 for v in vals)):
            return [self]
        normals, eqs = self.hrep
        neg = tuple(-x for x in normal)
        return [Cone.from_inequalities(list(normals) + [tuple(normal)], eqs, self.ambient_dim),
                Cone.from_inequalities(list(normals) + [neg], eqs, self.ambient_dim)]

    def faces(self) -> tuple["Cone", ...]:
        """All faces, the cone itself included, sorted by dimension."""
        if self._faces is None:
            normals = self.facet_normals
            full = frozenset(range(len(self.rays)))
            sets = {full}
            frontier = [full]
            zsets = [frozenset(i for i, r in enumerate(self.rays) if dot(f, r) == 0)
                     for f in normals]
            while frontier:
                nxt = []
                for s in frontier:
                    for z in zsets:
                        t = s & z
                        if t not in sets:
                            sets.add(t)
                            nxt.append(t)
                frontier = nxt
            out = []
            for s in sets:
                if s == full:
                    out.append(self)
                else:
                    out.append(Cone([self.rays[i] for i in sorted(s)], self.lineality,
                                    self.ambient_dim, _trusted=True))
            self._faces = tuple(sorted(set(out)))
        return self._faces

    def facets(self) -> tuple["Cone", ...]:
        return tuple(f for f in self.faces() if f.dim == self.dim - 1)

    def has_face(self, other: "Cone") -> bool:
        return other in self.faces()

    def image(self, q: QuotientMap) -> "Cone":
        """Image of the cone under an integral linear map."""
        rays = [q(r) for r in self.rays]
        lin = [q(l) for l in self.lineality]
        return Cone(rays, lin, q.target_dim)


def cone_contains(sigma: Cone, x) -> bool:
    return sigma.contains(x)


def cone_intersection(sigma: Cone, tau: Cone) -> Cone:
    return sigma.intersection(tau)


def relative_interior_point(sigma: Cone):
    return sigma.relative_interior_point()


class Fan:
    """A finite set of cones closed under taking faces."""

    def __init__(self, cones: Iterable[Cone], ambient_dim: int | None = None,
                 *, closed: bool = False):
        cones = list(cones)
        if ambient_dim is None:
            if not cones:
                raise FanError("ambient dimension needed for an empty fan")
            ambient_dim = cones[0].ambient_dim
        if any(c.ambient_dim != ambient_dim for c in cones):
            raise FanError("cones live in different ambient spaces")
        allc = set(cones)
        if not closed:
            for c in cones:
                allc.update(c.faces())
        self.ambient_dim = ambient_dim
        self.cones = tuple(sorted(allc))
        self._set = frozenset(allc)
        self._maximal = None
        self.dual_faces: dict | None = None

    def __contains__(self, cone) -> bool:
        return cone in self._set

    def __iter__(self):
        return iter(self.cones)

    def __len__(self):
        return len(self.cones)

    def __eq__(self, other):
        return isinstance(other, Fan) and self.ambient_dim == other.ambient_dim and \
            self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def __repr__(self):
        return f"Fan(dim={self.ambient_dim}, rays={self.rays()}, maximal={len(self.maximal_cones())})"

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cones), default=-1)

    def cones_of_dim(self, k: int) -> list[Cone]:
        return [c for c in self.cones if c.dim == k]

    def maximal_cones(self) -> list[Cone]:
        if self._maximal is None:
            nonmax = set()
            for c in self.cones:
                for f in c.faces():
                    if f != c:
                        nonmax.add(f)
            self._maximal = [c for c in self.cones if c not in nonmax]
        return self._maximal

    def rays(self) -> list[tuple[int, ...]]:
        """Primitive generators of the pointed one-dimensional cones, sorted."""
        return sorted(c.rays[0] for c in self.cones if c.dim == 1 and c.is_pointed())

    def is_pure(self) -> bool:
        return len({c.dim for c in self.maximal_cones()}) <= 1

    def is_simplicial(self) -> bool:
        return all(c.is_simplicial() for c in self.cones)


def check_fan_axioms(F: Fan) -> bool:
    """Faces present and every pairwise intersection a face of both cones."""
    for c in F.cones:
        if any(f not in F for f in c.faces()):
            return False
    for a, b in combinations(F.maximal_cones(), 2):
        m = a.intersection(b)
        if not (a.has_face(m) and b.has_face(m)):
            return False
    return True


def common_refinement(F1: Fan, F2: Fan) -> Fan:
    """The fan of all intersections sigma ∩ tau; its support is |F1| ∩ |F2|."""
    if F1.ambient_dim != F2.ambient_dim:
        raise FanError("ambient dimensions differ")
    cones = {a.intersection(b) for a in F1.maximal_cones() for b in F2.maximal_cones()}
    return Fan(cones, F1.ambient_dim)


def quotient_by_cone(delta: Cone) -> QuotientMap:
    return _quotient_map(delta.generators(), delta.ambient_dim)


def star_quotient(F: Fan, delta: Cone, q: QuotientMap | None = None):
    """Star of ``delta`` in F pushed to R^n / span(delta).

    Returns ``(fan, images)`` where ``images`` maps each cone of F containing
    ``delta`` as a face to its image cone.
    """
    if delta not in F:
        raise FanError(f"{delta} is not a cone of the fan")
    if q is None:
        q = quotient_by_cone(delta)
    images = {}
    for sigma in F.cones:
        if sigma.has_face(delta):
            images[sigma] = sigma.image(q)
    return Fan(images.values(), q.target_dim), images


def _pieces_cover(sigma: Cone, pieces: list[Cone]) -> bool:
    """Whether full-dimensional subcones of sigma, forming a fan, cover sigma."""
    if not pieces:
        return False
    if sigma.dim == 0:
        return True
    counts: dict[Cone, int] = {}
    for p in pieces:
        for f in p.facets():
            counts[f] = counts.get(f, 0) + 1
    for f, c in counts.items():
        if c >= 2:
            continue
        x = f.relative_interior_point() if f.dim > 0 else None
        if x is not None and not sigma.contains_in_relative_interior(x):
            continue
        if x is None and sigma.lineality == () and sigma.dim > 0:
            # the apex of a pointed cone lies on its boundary
            continue
        return False
    return True


def fan_covers_support(F: Fan, weighted_cones) -> bool:
    """Whether every cone with nonzero weight lies in the support of F.

    ``weighted_cones`` is an iterable of ``(cone, weight)`` pairs or an object
    with a ``weighted_cones()`` method. Each cone is cut by the cones of F
    and the full-dimensional pieces must tile it: every wall of a piece
    inside the cone has to be shared by a second piece.
    """
    if hasattr(weighted_cones, "weighted_cones"):
        weighted_cones = weighted_cones.weighted_cones()
    for sigma, w in weighted_cones:
        if w == 0:
            continue
        if sigma.ambient_dim != F.ambient_dim:
            raise FanError("ambient dimensions differ")
        pieces = set()
        for tau in F.maximal_cones():
            p = sigma.intersection(tau)
            if p.dim == sigma.dim:
                pieces.add(p)
        if not _pieces_cover(sigma, sorted(pieces)):
            return False
    return True


def is_complete(F: Fan) -> bool:
    """Whether the maximal cones of F cover R^n (facet pairing criterion)."""
    n = F.ambient_dim
    if not F.cones:
        return False
    if not F.is_pure():
        log.info("fan is not pure; treating as incomplete")
        return False
    if F.dim != n:
        return False
    return _pieces_cover(Cone.full(n), F.maximal_cones())


def stellar_subdivision(F: Fan, tau: Cone) -> tuple[Fan, tuple[int, ...]]:
    """Star subdivision of F at the ray through the relative interior of tau.

    Only pointed cones containing tau are subdivided. Returns the new fan and
    the new ray.
    """
    if tau not in F:
        raise FanError(f"{tau} is not a cone of the fan")
    if not tau.is_pointed():
        raise FanError("stellar subdivision needs a pointed cone")
    rho = primitive_generator(tau.relative_interior_point())
    n = F.ambient_dim
    new = []
    for sigma in F.maximal_cones():
        if not sigma.has_face(tau):
            new.append(sigma)
            continue
        for g in sigma.faces():
            if g.dim == sigma.dim - 1 and not g.has_face(tau):
                new.append(Cone(list(g.rays) + [rho], g.lineality, n))
    return Fan(new, n), rho


def simplicial_refinement(F: Fan) -> Fan:
    """Refine F to a simplicial fan by stellar subdivisions.

    The cone subdivided at each step is a non-simplicial cone of smallest
    dimension, ties broken by the canonical cone order.
    """
    while True:
        bad = [c for c in F.cones if c.is_pointed() and not c.is_simplicial()]
        if not bad:
            return F
        tau = min(bad, key=lambda c: (c.dim, c.key()))
        F, _ = stellar_subdivision(F, tau)


def ray_index(F: Fan) -> dict[tuple[int, ...], int]:
    return {r: i for i, r in enumerate(F.rays())}


def linear_on_cone(values: dict, sigma: Cone):
    """A vector w with w.r = values[r] for all rays r of sigma, or None."""
    A = [list(r) for r in sigma.rays]
    b = [as_fraction(values[r]) for r in sigma.rays]
    if not A:
        return [Fraction(0)] * sigma.ambient_dim
    return solve(A, b)


def is_strictly_convex(F: Fan, h: dict) -> bool:
    """Whether the piecewise linear function with values h on the rays is
    linear on each maximal cone and strictly convex across every wall.

    Uses the convention of support functions (maximum of linear functions),
    so strict convexity means w_sigma.r < h(r) for rays r outside sigma.
    """
    rays = F.rays()
    for sigma in F.maximal_cones():
        if not sigma.is_pointed():
            return False
        w = linear_on_cone(h, sigma)
        if w is None:
            return False
        inside = set(sigma.rays)
        for r in rays:
            if r not in inside and not dot(w, r) < h[r]:
                return False
    return True
