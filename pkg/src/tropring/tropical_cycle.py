"""Balanced weighted fans and their stable intersection product."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable

from .fan import Cone, Fan, FanError, quotient_by_cone
from .lattice_linalg import (
    as_fraction,
    dot,
    lattice_index,
    primitive,
    primitive_generator,
    rank,
    rref,
)
from .polytope import Polytope, integral_length, mixed_volume, normal_cone

GENERIC_DENOMINATOR = 2 ** 16


class CycleError(ValueError):
    pass


class UnbalancedCycleError(CycleError):
    def __init__(self, report):
        super().__init__(f"cycle is not balanced at {report.cone}: residual {report.residual}")
        self.report = report


class GenericityError(CycleError):
    pass


@dataclass(frozen=True)
class BalanceReport:
    balanced: bool
    cone: Cone | None = None
    residual: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.balanced


class TropicalCycle:
    """A weighted rational fan of pure dimension ``cycle_dim`` in R^n.

    Weights live on the ``cycle_dim``-dimensional cones; zero weights are
    allowed and do not count towards the support. The zero cycle has no
    weighted cones at all, and may carry a negative ``cycle_dim`` when it
    comes out of a product in too small an ambient space.
    """

    def __init__(self, ambient_dim: int, cycle_dim: int,
                 weighted_cones: Iterable[tuple[Cone, object]] = (), *, check: bool = True):
        weights: dict[Cone, Fraction] = {}
        for cone, w in weighted_cones:
            if cone.ambient_dim != ambient_dim:
                raise CycleError(f"{cone} does not live in R^{ambient_dim}")
            if cone.dim != cycle_dim:
                raise CycleError(f"{cone} has dimension {cone.dim}, expected {cycle_dim}")
            weights[cone] = weights.get(cone, Fraction(0)) + as_fraction(w)
        self.ambient_dim = ambient_dim
        self.cycle_dim = cycle_dim
        self.weights = weights
        self._cones = tuple(sorted(weights))
        self._fan = None
        self._balance = None
        if check:
            report = self.balance_report()
            if not report:
                raise UnbalancedCycleError(report)

    @property
    def fan(self) -> Fan:
        if self._fan is None:
            self._fan = Fan(self._cones, self.ambient_dim)
        return self._fan

    def weighted_cones(self) -> list[tuple[Cone, Fraction]]:
        """Weighted cones in canonical order (zero weights included)."""
        return [(c, self.weights[c]) for c in self._cones]

    def support_cones(self) -> list[tuple[Cone, Fraction]]:
        return [(c, w) for c, w in self.weighted_cones() if w != 0]

    def is_zero(self) -> bool:
        return not self.support_cones()

    def is_integral(self) -> bool:
        return all(w.denominator == 1 for w in self.weights.values())

    def degree(self) -> Fraction:
        """Weight of the origin of a 0-cycle."""
        if self.cycle_dim != 0:
            raise CycleError("degree is defined for 0-cycles only")
        return sum((w for _, w in self.weighted_cones()), Fraction(0))

    def balance_report(self) -> BalanceReport:
        if self._balance is None:
            self._balance = is_balanced(self)
        return self._balance

    def __repr__(self):
        parts = ", ".join(f"{c}: {w}" for c, w in self.support_cones())
        return f"TropicalCycle(n={self.ambient_dim}, k={self.cycle_dim}, {{{parts}}})"

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        return add(self, negate(other))

    def __rmul__(self, scalar):
        return scalar_multiply(scalar, self)

    def __mul__(self, other):
        if isinstance(other, TropicalCycle):
            return stable_product(self, other)
        return scalar_multiply(other, self)


def zero_cycle(ambient_dim: int, cycle_dim: int) -> TropicalCycle:
    return TropicalCycle(ambient_dim, cycle_dim, (), check=False)


def point_cycle(ambient_dim: int, weight=1) -> TropicalCycle:
    return TropicalCycle(ambient_dim, 0, [(Cone.zero(ambient_dim), weight)])


def fundamental_cycle(ambient_dim: int, weight=1) -> TropicalCycle:
    """R^n itself with constant weight."""
    return TropicalCycle(ambient_dim, ambient_dim, [(Cone.full(ambient_dim), weight)])


def is_balanced(C: TropicalCycle) -> BalanceReport:
    """Check the balancing condition at every codimension-one cone.

    At each (k-1)-cone rho, the primitive generators of the images of the
    adjacent k-cones in Z^n / (span rho ∩ Z^n), weighted, must sum to zero.
    The first violating cone is reported.
    """
    k = C.cycle_dim
    if k <= 0:
        return BalanceReport(True)
    walls: dict[Cone, list[tuple[Cone, Fraction]]] = {}
    for sigma, w in C.weighted_cones():
        for rho in sigma.facets():
            walls.setdefault(rho, []).append((sigma, w))
    for rho in sorted(walls):
        q = quotient_by_cone(rho)
        total = [Fraction(0)] * q.target_dim
        for sigma, w in walls[rho]:
            img = sigma.image(q)
            u = img.rays[0]
            total = [t + w * x for t, x in zip(total, u)]
        if any(total):
            return BalanceReport(False, rho, tuple(total))
    return BalanceReport(True)


# -- refinement -------------------------------------------------------------

def _normalize_hyperplane(v) -> tuple[int, ...]:
    v = primitive(v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-t for t in v)
    return v


def _hyperplanes(cones: Iterable[Cone]) -> list[tuple[int, ...]]:
    hs = set()
    for c in cones:
        normals, eqs = c.hrep
        for v in list(normals) + list(eqs):
            if any(v):
                hs.add(_normalize_hyperplane(v))
    return sorted(hs)


def _split_all(cone: Cone, hyperplanes) -> list[Cone]:
    pieces = [cone]
    for h in hyperplanes:
        nxt = []
        for p in pieces:
            nxt.extend(q for q in p.split(h) if q.dim == cone.dim)
        pieces = nxt
    return pieces


def refine(C: TropicalCycle, hyperplanes) -> TropicalCycle:
    """Cut every weighted cone of C by the given hyperplanes; weights are inherited."""
    out = []
    for sigma, w in C.weighted_cones():
        out.extend((p, w) for p in _split_all(sigma, hyperplanes))
    return TropicalCycle(C.ambient_dim, C.cycle_dim, out, check=False)


def _common_cells(*cycles: TropicalCycle) -> list[dict[Cone, Fraction]]:
    """Refine cycles on the arrangement cut out by all their cones.

    Every returned cell is a closed cell of one central hyperplane
    arrangement, so the cells of all the cycles together form a fan.
    """
    hs = _hyperplanes(c for C in cycles for c, w in C.support_cones())
    out = []
    for C in cycles:
        cells: dict[Cone, Fraction] = {}
        for sigma, w in C.support_cones():
            for p in _split_all(sigma, hs):
                cells[p] = cells.get(p, Fraction(0)) + w
        out.append(cells)
    return out


def stellar_refinement(C: TropicalCycle, tau: Cone) -> TropicalCycle:
    """Stellar subdivision of the weighted cones containing ``tau`` as a face."""
    rho = primitive_generator(tau.relative_interior_point())
    out = []
    for sigma, w in C.weighted_cones():
        if not sigma.has_face(tau) or not sigma.is_pointed():
            out.append((sigma, w))
            continue
        for g in sigma.facets():
            if not g.has_face(tau):
                out.append((Cone(list(g.rays) + [rho], g.lineality, C.ambient_dim), w))
    return TropicalCycle(C.ambient_dim, C.cycle_dim, out, check=False)


# -- linear structure -------------------------------------------------------

def _check_same_space(C1: TropicalCycle, C2: TropicalCycle):
    if C1.ambient_dim != C2.ambient_dim:
        raise CycleError("cycles live in different ambient spaces")


def add(C1: TropicalCycle, C2: TropicalCycle) -> TropicalCycle:
    _check_same_space(C1, C2)
    if C1.cycle_dim != C2.cycle_dim:
        raise CycleError(f"cannot add a {C1.cycle_dim}-cycle and a {C2.cycle_dim}-cycle")
    if C1.is_zero():
        return C2
    if C2.is_zero():
        return C1
    c1, c2 = _common_cells(C1, C2)
    total = dict(c1)
    for c, w in c2.items():
        total[c] = total.get(c, Fraction(0)) + w
    return TropicalCycle(C1.ambient_dim, C1.cycle_dim,
                         [(c, w) for c, w in total.items() if w != 0])


def scalar_multiply(scalar, C: TropicalCycle) -> TropicalCycle:
    s = as_fraction(scalar)
    if s == 0:
        return zero_cycle(C.ambient_dim, C.cycle_dim)
    return TropicalCycle(C.ambient_dim, C.cycle_dim,
                         [(c, s * w) for c, w in C.weighted_cones()], check=False)


def negate(C: TropicalCycle) -> TropicalCycle:
    return scalar_multiply(-1, C)


def equivalent(C1: TropicalCycle, C2: TropicalCycle) -> bool:
    """Same dimension, same support and same weights on a common subdivision."""
    _check_same_space(C1, C2)
    if C1.cycle_dim != C2.cycle_dim:
        return C1.is_zero() and C2.is_zero()
    if C1.is_zero() or C2.is_zero():
        return C1.is_zero() and C2.is_zero()
    c1, c2 = _common_cells(C1, C2)
    keys = set(c1) | set(c2)
    return all(c1.get(c, 0) == c2.get(c, 0) for c in keys)


# -- tropicalization --------------------------------------------------------

def tropical_hypersurface(P: Polytope) -> TropicalCycle:
    """Codimension-one skeleton of the normal fan, weighted by lattice edge lengths."""
    if not P.is_full_dimensional:
        raise CycleError("tropical hypersurfaces are built for full-dimensional polytopes only")
    if not P.is_lattice:
        raise CycleError("the polytope is not a lattice polytope")
    n = P.ambient_dim
    cones = [(normal_cone(P, e), integral_length(P, e)) for e in P.edges()]
    return TropicalCycle(n, n - 1, cones)


# -- intersection -----------------------------------------------------------

@dataclass(frozen=True)
class IntersectionPair:
    i: int
    j: int
    index: int
    contribution: Fraction


@dataclass(frozen=True)
class IntersectionResult:
    """Intersection number with the local contributions that add up to it."""

    value: Fraction
    pairs: tuple[IntersectionPair, ...] = field(default_factory=tuple)
    seed: int = 1
    vector: tuple[Fraction, ...] = ()


def max_seed_retries() -> int:
    return int(os.environ.get("TROP_MAX_SEED_RETRIES", "32"))


def generic_vector(n: int, seed: int) -> tuple[Fraction, ...]:
    """Deterministic pseudo-random rational vector with denominator 2^16."""
    rng = random.Random(seed)
    D = GENERIC_DENOMINATOR
    return tuple(Fraction(rng.randint(-4 * D, 4 * D), D) for _ in range(n))


class _NotGeneric(Exception):
    pass


def _pair_contribution(sigma: Cone, tau: Cone, a, n: int):
    """Lattice index if sigma meets tau + a transversally in relative interiors,
    0 if they miss each other; raises _NotGeneric otherwise."""
    bs = [list(v) for v in sigma.span_basis()]
    bt = [list(v) for v in tau.span_basis()]
    cols = bs + [[-x for x in v] for v in bt]
    r = rank(cols) if cols else 0
    if r < n:
        # spans not transversal: a generic a avoids span(sigma) + span(tau)
        if rank(cols + [list(a)]) == r:
            raise _NotGeneric
        return 0
    # solve sum alpha_i bs_i - sum beta_j bt_j = a
    M = [[cols[j][i] for j in range(len(cols))] + [a[i]] for i in range(n)]
    R, piv = rref(M, len(cols) + 1)
    coef = [Fraction(0)] * len(cols)
    for row, p in zip(R, piv):
        coef[p] = row[-1]
    p_pt = [sum(coef[i] * bs[i][x] for i in range(len(bs))) for x in range(n)]
    t_pt = [p_pt[x] - a[x] for x in range(n)]
    in_s, in_t = sigma.contains(p_pt), tau.contains(t_pt)
    if not (in_s and in_t):
        return 0
    if not (sigma.contains_in_relative_interior(p_pt) and tau.contains_in_relative_interior(t_pt)):
        raise _NotGeneric
    return lattice_index(bs, bt, n)


def stable_intersection_number(C1: TropicalCycle, C2: TropicalCycle,
                               seed: int = 1) -> IntersectionResult:
    """Intersection number of cycles of complementary dimension.

    Counts the pairs of cones meeting after translating the second cycle by
    a generic vector, each with its lattice index times both weights. The
    vector comes from ``seed``; if it turns out not to be generic the next
    seeds are tried, up to ``TROP_MAX_SEED_RETRIES``.
    """
    _check_same_space(C1, C2)
    n = C1.ambient_dim
    if C1.cycle_dim + C2.cycle_dim != n:
        raise CycleError(
            f"dimensions {C1.cycle_dim} and {C2.cycle_dim} are not complementary in R^{n}")
    for C in (C1, C2):
        report = C.balance_report()
        if not report:
            raise UnbalancedCycleError(report)
    s1, s2 = C1.support_cones(), C2.support_cones()
    retries = max_seed_retries()
    failures = []
    for attempt in range(retries):
        s = seed + attempt
        a = generic_vector(n, s)
        try:
            pairs = []
            for i, (sigma, w1) in enumerate(s1):
                for j, (tau, w2) in enumerate(s2):
                    idx = _pair_contribution(sigma, tau, a, n)
                    if idx:
                        pairs.append(IntersectionPair(i, j, idx, idx * w1 * w2))
        except _NotGeneric:
            failures.append(s)
            continue
        value = sum((p.contribution for p in pairs), Fraction(0))
        return IntersectionResult(value, tuple(pairs), s, a)
    raise GenericityError(f"no generic translation found; rejected seeds {failures}")


def _star_cycle(cells: dict[Cone, Fraction], delta: Cone, q, dim: int) -> TropicalCycle:
    items = [(sigma.image(q), w) for sigma, w in cells.items()
             if w != 0 and sigma.has_face(delta)]
    return TropicalCycle(q.target_dim, dim, items, check=False)


def stable_product(C1: TropicalCycle, C2: TropicalCycle, seed: int = 1) -> TropicalCycle:
    """Stable intersection of a k-cycle and an m-cycle, a (k+m-n)-cycle.

    Both cycles are refined into cells of one hyperplane arrangement, so
    they become weighted subfans of the complete fan of that arrangement.
    A d-cell delta then gets the intersection number of the two stars of
    delta in R^n / span(delta).
    """
    _check_same_space(C1, C2)
    n = C1.ambient_dim
    k, m = C1.cycle_dim, C2.cycle_dim
    d = k + m - n
    for C in (C1, C2):
        report = C.balance_report()
        if not report:
            raise UnbalancedCycleError(report)
    if d < 0 or C1.is_zero() or C2.is_zero():
        return zero_cycle(n, d)
    if d == 0:
        value = stable_intersection_number(C1, C2, seed).value
        if value == 0:
            return zero_cycle(n, 0)
        return TropicalCycle(n, 0, [(Cone.zero(n), value)])
    cells1, cells2 = _common_cells(C1, C2)
    faces1 = {f for c in cells1 for f in c.faces() if f.dim == d}
    faces2 = {f for c in cells2 for f in c.faces() if f.dim == d}
    out = []
    for delta in sorted(faces1 & faces2):
        q = quotient_by_cone(delta)
        A = _star_cycle(cells1, delta, q, k - d)
        B = _star_cycle(cells2, delta, q, m - d)
        if A.is_zero() or B.is_zero():
            continue
        w = stable_intersection_number(A, B, seed).value
        if w != 0:
            out.append((delta, w))
    return TropicalCycle(n, d, out)


def degree(C1: TropicalCycle, C2: TropicalCycle, seed: int = 1) -> Fraction:
    """Degree of the product of two cycles of complementary dimension."""
    return stable_intersection_number(C1, C2, seed).value


def intersection_number_of_hypersurfaces(*polytopes: Polytope, seed: int = 1) -> Fraction:
    """Degree of the stable product of the tropical hypersurfaces of n polytopes."""
    if len(polytopes) == 1 and not isinstance(polytopes[0], Polytope):
        polytopes = tuple(polytopes[0])
    n = len(polytopes)
    if n == 0 or any(P.ambient_dim != n for P in polytopes):
        raise CycleError("need exactly n polytopes in R^n")
    C = tropical_hypersurface(polytopes[0])
    for P in polytopes[1:]:
        C = stable_product(C, tropical_hypersurface(P), seed)
    return C.degree() if C.cycle_dim == 0 else Fraction(0)


def bkk_number(*polytopes: Polytope) -> Fraction:
    """n! times the mixed volume."""
    if len(polytopes) == 1 and not isinstance(polytopes[0], Polytope):
        polytopes = tuple(polytopes[0])
    return factorial(len(polytopes)) * mixed_volume(*polytopes)
