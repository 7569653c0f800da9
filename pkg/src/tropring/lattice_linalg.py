"""Exact integer and rational linear algebra.

Matrices are plain lists of rows. Integer matrices hold Python ints,
rational ones hold :class:`fractions.Fraction`. Nothing in here touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

IntegerMatrix = list[list[int]]
RationalVector = Sequence[Fraction]


class LinearAlgebraError(ValueError):
    """Raised when a lattice operation gets inputs violating its preconditions."""


# -- small vector helpers ---------------------------------------------------

def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vgcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = vgcd(v)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point input is not accepted; pass int, Fraction or 'p/q'")
    return Fraction(x)


def clear_denominators(v) -> tuple[int, ...]:
    """Scale a rational vector by the lcm of its denominators."""
    v = [as_fraction(x) for x in v]
    lcm = 1
    for x in v:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    return tuple(int(x * lcm) for x in v)


def primitive_generator(v) -> tuple[int, ...]:
    """Primitive integer vector on the ray through the rational vector ``v``."""
    w = clear_denominators(v)
    if not any(w):
        raise LinearAlgebraError("zero vector has no primitive generator")
    return primitive(w)


def identity(n: int) -> IntegerMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M, ncols: int | None = None):
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A, B):
    if not A:
        return []
    Bt = transpose(B)
    if not Bt:
        return [[] for _ in A]
    return [[dot(row, col) for col in Bt] for row in A]


# -- elimination over the rationals -----------------------------------------

def rref(M, ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    rows = [[as_fraction(x) for x in row] for row in M]
    n = len(rows[0]) if rows else (ncols or 0)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(M) -> int:
    return len(rref(M)[1]) if M else 0


def nullspace(M, n: int) -> list[tuple[int, ...]]:
    """Primitive integer basis of {x in Q^n : M x = 0}."""
    R, pivots = rref(M, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(primitive(clear_denominators(x)))
    return basis


def solve(A, b) -> list[Fraction] | None:
    """One solution x of A x = b, or None if the system is inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return x


def det(M) -> Fraction:
    """Determinant by fraction-free elimination (exact for int and Fraction entries)."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    A = [[as_fraction(x) for x in row] for row in M]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def inverse(M) -> list[list[Fraction]]:
    n = len(M)
    aug = [[as_fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise LinearAlgebraError("matrix is singular")
    return [row[n:] for row in R]


# -- integer normal forms ---------------------------------------------------

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_normal_form(M, ncols: int | None = None) -> IntegerMatrix:
    """Row-style Hermite normal form with zero rows dropped.

    Pivots are positive and entries above each pivot are reduced into
    ``[0, pivot)``, so the output depends only on the row lattice of ``M``.
    """
    A = [[int(x) for x in row] for row in M]
    n = len(A[0]) if A else (ncols or 0)
    r = 0
    for c in range(n):
        rows = [i for i in range(r, len(A)) if A[i][c] != 0]
        if not rows:
            continue
        p = rows[0]
        A[r], A[p] = A[p], A[r]
        for i in range(r + 1, len(A)):
            if A[i][c] == 0:
                continue
            a, b = A[r][c], A[i][c]
            g, x, y = _xgcd(a, b)
            ra, rb = A[r], A[i]
            A[r] = [x * u + y * v for u, v in zip(ra, rb)]
            A[i] = [(a // g) * v - (b // g) * u for u, v in zip(ra, rb)]
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        piv = A[r][c]
        for i in range(r):
            q = A[i][c] // piv
            if q:
                A[i] = [u - q * v for u, v in zip(A[i], A[r])]
        r += 1
    return [row for row in A[:r]]


def smith_normal_form(M) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return (U, D, V) with M = U D V, U and V unimodular, D diagonal.

    The diagonal satisfies d1 | d2 | ... and is nonnegative. The pivot is
    always the smallest nonzero entry in absolute value of the remaining
    block, ties going to the first one in row-major order, so the output is
    deterministic.
    """
    A = [[int(x) for x in row] for row in M]
    r = len(A)
    c = len(A[0]) if A else 0
    U = identity(r)
    V = identity(c)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        for row in U:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        V[i], V[j] = V[j], V[i]

    def add_row(i, t, q):
        # row_i += q * row_t ; keep M = U A
        A[i] = [a + q * b for a, b in zip(A[i], A[t])]
        for row in U:
            row[t] -= q * row[i]

    def add_col(j, t, q):
        # col_j += q * col_t ; keep M = A V
        for row in A:
            row[j] += q * row[t]
        V[t] = [a - q * b for a, b in zip(V[t], V[j])]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    v = A[i][j]
                    if v and (best is None or abs(v) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
            piv = A[t][t]
            clean = True
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, r)
                        for j in range(t + 1, c) if A[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < r and A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            for row in U:
                row[t] = -row[t]
    return U, A, V


# -- lattices ---------------------------------------------------------------

def saturate(B, ncols: int | None = None) -> IntegerMatrix:
    """Basis (in Hermite form) of span_Q(rows of B) intersected with Z^n."""
    rows = [clear_denominators(row) for row in B]
    n = len(rows[0]) if rows else (ncols or 0)
    rows = [list(row) for row in rows if any(row)]
    if not rows:
        return []
    _, D, V = smith_normal_form(rows)
    k = sum(1 for i in range(min(len(D), n)) if D[i][i] != 0)
    return hermite_normal_form(V[:k], n)


def lattice_index(B1, B2, n: int | None = None) -> int:
    """Index of the direct sum of the saturated row lattices of B1 and B2 in Z^n."""
    if n is None:
        n = len(B1[0]) if B1 else len(B2[0]) if B2 else 0
    S1 = saturate(B1, n)
    S2 = saturate(B2, n)
    stacked = S1 + S2
    if len(stacked) != n:
        raise LinearAlgebraError(
            f"ranks {len(S1)} + {len(S2)} do not add up to the ambient dimension {n}")
    d = det(stacked)
    if d == 0:
        raise LinearAlgebraError("spans intersect nontrivially")
    return abs(int(d))


@dataclass(frozen=True)
class QuotientMap:
    """Integral surjection Z^n -> Z^(n-d) whose kernel is a saturated sublattice.

    ``matrix`` holds one integer functional per target coordinate.
    """

    source_dim: int
    matrix: tuple[tuple[int, ...], ...]

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x):
        return tuple(dot(row, x) for row in self.matrix)


def _quotient_map(L, n: int) -> QuotientMap:
    S = saturate(L, n)
    k = len(S)
    if k == 0:
        return QuotientMap(n, tuple(tuple(r) for r in identity(n)))
    if k == n:
        return QuotientMap(n, ())
    _, _, V = smith_normal_form(S)
    Vinv = inverse(V)
    # x = y V  =>  y = x V^-1; the last n-k coordinates of y vanish exactly on span(S)
    rows = [[int(Vinv[i][j]) for i in range(n)] for j in range(k, n)]
    return QuotientMap(n, tuple(tuple(r) for r in hermite_normal_form(rows, n)))


def quotient_coordinates(L, n: int) -> QuotientMap:
    """Coordinates on Z^n / (span L ∩ Z^n), canonicalized by Hermite reduction."""
    if L and rank(L) != len(L):
        raise LinearAlgebraError("rows of L must be linearly independent")
    if L and len(L) >= n:
        raise LinearAlgebraError("L has full rank; the quotient is zero-dimensional")
    return _quotient_map(L, n)
