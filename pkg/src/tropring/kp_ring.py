"""Volume polynomials of simplicial fans and the graded rings they generate.

For a homogeneous polynomial P of degree n in m variables, the ring
A(P) is the algebra of constant coefficient differential operators modulo
those that kill P. With P = n! * volume on the space of support vectors of a
complete simplicial fan this is the intersection ring of the toric variety.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .fan import (
    Cone,
    Fan,
    FanError,
    is_complete,
    is_strictly_convex,
    linear_on_cone,
    stellar_subdivision,
)
from .lattice_linalg import as_fraction, det, dot, inverse, rref
from .polytope import (
    Polytope,
    PolytopeError,
    maximizing_vertices,
    minkowski_sum,
    normal_fan,
    support_value,
    triangulation,
)


class RingError(ValueError):
    pass


Monomial = tuple[int, ...]


def monomials(m: int, k: int) -> list[Monomial]:
    """Exponent vectors of degree k in m variables, graded lexicographic order."""
    out = []
    for combo in combinations_with_replacement(range(m), k):
        e = [0] * m
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out), reverse=True)


def _mono_factorial(e: Monomial) -> int:
    p = 1
    for x in e:
        p *= factorial(x)
    return p


class Polynomial:
    """Sparse polynomial with rational coefficients keyed by exponent tuples."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: Mapping[Monomial, object] | None = None):
        self.nvars = nvars
        self.coeffs = {tuple(e): as_fraction(c) for e, c in (coeffs or {}).items()
                       if as_fraction(c) != 0}

    @classmethod
    def linear_form(cls, values) -> "Polynomial":
        m = len(values)
        return cls(m, {tuple(int(i == j) for j in range(m)): v for i, v in enumerate(values)})

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e in sorted(self.coeffs, reverse=True):
            mono = "*".join(f"h{i + 1}" + (f"^{x}" if x > 1 else "") for i, x in enumerate(e) if x)
            terms.append(f"{self.coeffs[e]}" + (f"*{mono}" if mono else ""))
        return " + ".join(terms)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.coeffs}) <= 1

    def __add__(self, other):
        c = dict(self.coeffs)
        for e, v in other.coeffs.items():
            c[e] = c.get(e, 0) + v
        return Polynomial(self.nvars, c)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s) -> "Polynomial":
        s = as_fraction(s)
        return Polynomial(self.nvars, {e: s * v for e, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        c: dict[Monomial, Fraction] = {}
        for e1, v1 in self.coeffs.items():
            for e2, v2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c[e] = c.get(e, 0) + v1 * v2
        return Polynomial(self.nvars, c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x) -> Fraction:
        x = [as_fraction(t) for t in x]
        total = Fraction(0)
        for e, v in self.coeffs.items():
            t = v
            for xi, k in zip(x, e):
                if k:
                    t *= xi ** k
            total += t
        return total

    def differentiate(self, beta: Monomial) -> "Polynomial":
        """Apply the monomial operator d^beta."""
        c = {}
        for e, v in self.coeffs.items():
            if all(a >= b for a, b in zip(e, beta)):
                f = v
                for a, b in zip(e, beta):
                    for t in range(b):
                        f *= a - t
                c[tuple(a - b for a, b in zip(e, beta))] = f
        return Polynomial(self.nvars, c)

    def directional_derivative(self, v) -> "Polynomial":
        out = Polynomial(self.nvars)
        for i, vi in enumerate(v):
            vi = as_fraction(vi)
            if vi:
                e = tuple(int(i == j) for j in range(self.nvars))
                out = out + self.differentiate(e).scale(vi)
        return out

    def constant_term(self) -> Fraction:
        return self.coeffs.get((0,) * self.nvars, Fraction(0))


# -- support vectors --------------------------------------------------------

def support_vector(F: Fan, h) -> tuple[Fraction, ...]:
    """Normalize h (sequence in ``F.rays()`` order, or mapping ray -> value)."""
    rays = F.rays()
    if isinstance(h, Mapping):
        try:
            return tuple(as_fraction(h[tuple(r)]) for r in rays)
        except KeyError as e:
            raise RingError(f"no value for ray {e.args[0]}") from None
    h = tuple(as_fraction(x) for x in h)
    if len(h) != len(rays):
        raise RingError(f"support vector has length {len(h)}, the fan has {len(rays)} rays")
    return h


def class_of_polytope(F: Fan, Q: Polytope) -> tuple[Fraction, ...]:
    """Support values of Q on the rays of F.

    Q's support function has to be linear on every cone of F, i.e. the
    rays of each maximal cone share a maximizing vertex of Q.
    """
    if Q.ambient_dim != F.ambient_dim:
        raise RingError("polytope and fan live in different dimensions")
    for sigma in F.maximal_cones():
        common = None
        for r in sigma.rays:
            mx = maximizing_vertices(Q, r)
            common = mx if common is None else common & mx
        if sigma.rays and not common:
            raise RingError(f"support function of the polytope is not linear on {sigma}")
    return tuple(support_value(Q, r) for r in F.rays())


def polytope_of_support_vector(F: Fan, h) -> Polytope:
    """{x : <x, u_r> <= h_r for every ray u_r of F}."""
    from .polytope import polytope_from_inequalities
    h = support_vector(F, h)
    return polytope_from_inequalities(F.rays(), h)


def is_smooth(F: Fan) -> bool:
    """Every maximal cone is simplicial and its rays form part of a lattice basis."""
    from .lattice_linalg import hermite_normal_form, saturate
    for sigma in F.maximal_cones():
        if not sigma.is_simplicial():
            return False
        if hermite_normal_form(sigma.rays) != saturate(sigma.rays):
            return False
    return True


# -- volume polynomial ------------------------------------------------------

class _ChamberVolume:
    """Exact volume of P(h) for h in the chamber of a complete simplicial fan.

    The vertex of P(h) dual to a maximal cone depends linearly on h, and the
    combinatorics are constant on the chamber, so one triangulation computed
    at the reference point serves every h in it.
    """

    def __init__(self, F: Fan, h0):
        if not is_complete(F):
            raise RingError("the fan is not complete")
        if not F.is_simplicial():
            raise RingError("the fan is not simplicial")
        self.fan = F
        self.rays = F.rays()
        self.n = F.ambient_dim
        self.index = {r: i for i, r in enumerate(self.rays)}
        self.h0 = support_vector(F, h0)
        if not self.in_chamber(self.h0):
            raise RingError("reference support vector is not strictly convex on the fan; "
                            "choose a different reference")
        self.cones = list(F.maximal_cones())
        self.solvers = []
        for sigma in self.cones:
            self.solvers.append(([self.index[r] for r in sigma.rays], inverse(sigma.rays)))
        verts = [self.vertex(i, self.h0) for i in range(len(self.cones))]
        P = Polytope(verts, self.n)
        if len(P.vertices) != len(self.cones):
            raise RingError("reference polytope does not have one vertex per maximal cone")
        label = {v: i for i, v in enumerate(verts)}
        self.simplices = []
        for s in triangulation(P):
            labels = tuple(label[P.vertices[i]] for i in s)
            sign = 1 if self._det(labels, verts) > 0 else -1
            self.simplices.append((labels, sign))

    def in_chamber(self, h) -> bool:
        return is_strictly_convex(self.fan, {r: h[i] for i, r in enumerate(self.rays)})

    def vertex(self, i: int, h):
        idx, inv = self.solvers[i]
        b = [h[j] for j in idx]
        # rays are rows of sigma, so U v = b with v = U^-1 b
        return tuple(sum(inv[r][c] * b[c] for c in range(len(b))) for r in range(self.n))

    @staticmethod
    def _det(labels, verts):
        v0 = verts[labels[0]]
        return det([[a - b for a, b in zip(verts[i], v0)] for i in labels[1:]])

    def __call__(self, h) -> Fraction:
        verts = [self.vertex(i, h) for i in range(len(self.cones))]
        total = sum((sign * self._det(labels, verts) for labels, sign in self.simplices),
                    Fraction(0))
        return total / factorial(self.n)


@dataclass
class VolumePolynomial:
    """Volume of P(h) = {x : <x, u_r> <= h_r} as a polynomial in the ray values h."""

    num_rays: int
    degree: int
    coefficients: dict[Monomial, Fraction]
    chamber_reference: tuple[Fraction, ...]
    rays: tuple[tuple[int, ...], ...] = ()
    step: Fraction = Fraction(1)

    @property
    def polynomial(self) -> Polynomial:
        return Polynomial(self.num_rays, self.coefficients)

    def __call__(self, h) -> Fraction:
        return self.polynomial(h)


def volume_polynomial(F: Fan, h0) -> VolumePolynomial:
    """Fit the volume polynomial of a complete simplicial fan near ``h0``.

    Volumes are sampled at h0 + eps*beta for all exponent vectors beta of
    degree at most n; the coefficient of h^alpha is the mixed finite
    difference over the box below alpha divided by eps^n * alpha!. The step
    eps is halved until every sample keeps the combinatorics of h0.
    """
    vol = _ChamberVolume(F, h0)
    m, n = len(vol.rays), vol.n
    h0 = vol.h0
    eps = Fraction(1)
    for _ in range(64):
        # the chamber is convex, so the corners of the sample simplex suffice
        corners = [tuple(x + n * eps * (i == j) for j, x in enumerate(h0)) for i in range(m)]
        if all(vol.in_chamber(c) for c in corners):
            break
        eps /= 2
    else:
        raise RingError("could not find a sampling step inside the chamber")

    cache: dict[Monomial, Fraction] = {}

    def sample(beta):
        if beta not in cache:
            cache[beta] = vol(tuple(x + eps * b for x, b in zip(h0, beta)))
        return cache[beta]

    coeffs = {}
    for alpha in monomials(m, n):
        support = [i for i, a in enumerate(alpha) if a]
        total = Fraction(0)
        for sub in _box(tuple(alpha[i] for i in support)):
            beta = [0] * m
            w = 1
            for i, b in zip(support, sub):
                beta[i] = b
                w *= comb(alpha[i], b)
            sgn = -1 if (n - sum(sub)) % 2 else 1
            total += sgn * w * sample(tuple(beta))
        c = total / (eps ** n * _mono_factorial(alpha))
        if c:
            coeffs[alpha] = c
    return VolumePolynomial(m, n, coeffs, h0, tuple(vol.rays), eps)


def _box(bounds):
    if not bounds:
        yield ()
        return
    for rest in _box(bounds[1:]):
        for b in range(bounds[0] + 1):
            yield (b,) + rest


def chamber_volume(F: Fan, h0):
    """Callable giving the exact volume of P(h) for h in the chamber of h0."""
    return _ChamberVolume(F, h0)


# -- graded ring ------------------------------------------------------------

@dataclass
class GradedRing:
    """The ring A(P) of differential operators modulo the annihilator of P.

    ``bases[k]`` lists the monomial operators chosen as a basis of A_k and
    ``pairing[k][i][j]`` is (bases[k][i] * bases[n-k][j]) applied to P.
    """

    polynomial: Polynomial
    degree: int
    num_vars: int
    bases: list[list[Monomial]]
    pairing: dict[int, list[list[Fraction]]]
    smooth_fan: bool | None = None
    normalization: str = "P"
    rays: tuple = field(default_factory=tuple)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.bases)

    def pairing_rank(self, k: int) -> int:
        M = self.pairing[k]
        return len(rref(M)[1]) if M and M[0] else 0

    def has_poincare_duality(self) -> bool:
        n = self.degree
        dims = self.dims
        return all(dims[k] == dims[n - k] and self.pairing_rank(k) == dims[k]
                   for k in range(n + 1))

    def pair(self, a: Polynomial, b: Polynomial) -> Fraction:
        """Evaluate the operator product a*b on P (degrees must add up to n)."""
        out = Fraction(0)
        for ea, va in a.coeffs.items():
            for eb, vb in b.coeffs.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out += va * vb * self.polynomial.differentiate(e).constant_term()
        return out

    def report(self) -> dict:
        return {
            "dims": list(self.dims),
            "pairing": {str(k): [[_q(x) for x in row] for row in M]
                        for k, M in sorted(self.pairing.items())},
            "smooth_fan": self.smooth_fan,
            "normalization": self.normalization,
        }


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def build_ring(P: Polynomial, m: int | None = None, n: int | None = None) -> GradedRing:
    """A(P) = D / Ann(P) with graded-lex pivot monomials as bases."""
    if P.is_zero():
        raise RingError("the zero polynomial has no associated ring")
    if not P.is_homogeneous():
        raise RingError("the polynomial is not homogeneous")
    m = P.nvars if m is None else m
    n = P.degree() if n is None else n
    if P.degree() != n:
        raise RingError(f"polynomial has degree {P.degree()}, expected {n}")
    bases = []
    for k in range(n + 1):
        cols = monomials(m, k)
        images = [P.differentiate(b) for b in cols]
        rows = sorted({e for im in images for e in im.coeffs})
        M = [[im.coeffs.get(e, Fraction(0)) for im in images] for e in rows]
        _, piv = rref(M, len(cols)) if rows else ([], [])
        bases.append([cols[p] for p in piv])
    pairing = {}
    for k in range(n + 1):
        pairing[k] = [[P.differentiate(tuple(x + y for x, y in zip(a, b))).constant_term()
                       for b in bases[n - k]] for a in bases[k]]
    return GradedRing(P, n, m, bases, pairing)


def top_pairing(F: Fan, V: VolumePolynomial, *classes) -> Fraction:
    """Iterated directional derivative of the volume polynomial.

    For classes of polytopes Q_1..Q_n this is n! times their mixed volume.
    """
    if len(classes) != V.degree:
        raise RingError(f"need {V.degree} support vectors, got {len(classes)}")
    P = V.polynomial
    for h in classes:
        h = support_vector(F, h)
        if len(h) != V.num_rays:
            raise RingError("support vector length does not match the volume polynomial")
        P = P.directional_derivative(h)
    return P.constant_term()


def ring_of_fan(F: Fan, h0) -> GradedRing:
    """Graded ring of n! times the volume polynomial of F."""
    V = volume_polynomial(F, h0)
    R = build_ring(V.polynomial.scale(factorial(V.degree)), V.num_rays, V.degree)
    R.smooth_fan = is_smooth(F)
    R.normalization = "n!*V"
    R.rays = V.rays
    return R


# -- reference chambers -----------------------------------------------------

def chamber_fan(polytopes: Iterable[Polytope]) -> tuple[Fan, tuple[Fraction, ...]]:
    """A complete simplicial fan refining every normal fan, with a chamber point.

    Starts from the normal fan of the Minkowski sum, whose support function
    is strictly convex, and subdivides stellarly; each new ray's value is
    pushed slightly below the linear extension until strict convexity holds.
    """
    polytopes = list(polytopes)
    if not polytopes:
        raise RingError("need at least one polytope")
    Q = polytopes[0]
    for P in polytopes[1:]:
        Q = minkowski_sum(Q, P)
    if not Q.is_full_dimensional:
        raise RingError("the Minkowski sum is not full-dimensional")
    F = normal_fan(Q)
    h = {r: support_value(Q, r) for r in F.rays()}
    while True:
        bad = [c for c in F.cones if not c.is_simplicial()]
        if not bad:
            break
        tau = min(bad, key=lambda c: (c.dim, c.key()))
        w = linear_on_cone(h, tau)
        F2, rho = stellar_subdivision(F, tau)
        base = dot(w, rho)
        eps = Fraction(1)
        for _ in range(64):
            h2 = dict(h)
            h2[rho] = base - eps
            if is_strictly_convex(F2, h2):
                break
            eps /= 2
        else:
            raise RingError("could not perturb the support function after subdivision")
        F, h = F2, h2
    return F, tuple(h[r] for r in F.rays())
