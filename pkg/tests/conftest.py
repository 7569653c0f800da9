import json
import random
from fractions import Fraction

import pytest
import sympy

from tropring.fan import Cone
from tropring.tropical_cycle import TropicalCycle


def line_cycle(direction, weight=1):
    """A full line through the origin in R^2 as a 1-cycle."""
    return TropicalCycle(2, 1, [(Cone((), [direction], 2), weight)])


@pytest.fixture
def write_json(tmp_path):
    def _write(name, doc):
        p = tmp_path / name
        p.write_text(json.dumps(doc))
        return str(p)
    return _write


def projection_index(B1, B2):
    """[Z^n : (span B1 ∩ Z^n) + (span B2 ∩ Z^n)] without Smith/Hermite forms.

    With pi the projection onto span B1 along span B2, an integer point x lies
    in the sum exactly when pi(x) is integral, so the index is the order of the
    subgroup of Q^n/Z^n generated by pi(e_1), ..., pi(e_n). That group is
    enumerated by closure.
    """
    M = sympy.Matrix(list(B1) + list(B2))
    n = M.shape[1]
    k = len(B1)
    Minv = M.inv()
    gens = []
    for i in range(n):
        c = sympy.Matrix([[int(i == j) for j in range(n)]]) * Minv
        a = sympy.Matrix([list(c[:k])]) * M[:k, :]
        gens.append(tuple(Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) % 1
                          for x in a))
    zero = tuple(Fraction(0) for _ in range(n))
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple((x + y) % 1 for x, y in zip(p, g))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def index_cases(count=50, seed=20240601):
    """Deterministic complementary pairs (B1, B2) in dimensions 2 and 3."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice([2, 3])
        k = rng.randint(1, n - 1)
        B1 = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(k)]
        B2 = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n - k)]
        if sympy.Matrix(B1 + B2).det() != 0:
            out.append((B1, B2, n))
    return out


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_RESULTS):
            terminalreporter.write_line(line)
