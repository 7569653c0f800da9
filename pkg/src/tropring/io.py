"""JSON encodings of polytopes, fans, cycles and ring reports.

Rationals are written as strings ``"p/q"`` (or ``"p"`` when integral);
readers also accept plain integers.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .fan import Cone, Fan
from .lattice_linalg import as_fraction
from .polytope import Polytope
from .tropical_cycle import TropicalCycle


class ParseError(ValueError):
    pass


def qstr(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rational(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"expected an integer or a 'p/q' string, got {x!r}")
    try:
        return as_fraction(x)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise ParseError(f"bad rational {x!r}") from e


def _vectors(rows, n, what):
    if not isinstance(rows, list):
        raise ParseError(f"{what} must be a list of vectors")
    out = []
    for r in rows:
        if not isinstance(r, list) or len(r) != n:
            raise ParseError(f"{what}: {r!r} is not a vector of length {n}")
        out.append(tuple(_rational(x) for x in r))
    return out


def _dim(doc, key="dim"):
    n = doc.get(key)
    if not isinstance(n, int) or n < 0:
        raise ParseError(f"missing or invalid {key!r}")
    return n


def _int_vector(v):
    return [int(x) for x in v]


# -- polytopes --------------------------------------------------------------

def polytope_from_json(doc) -> Polytope:
    n = _dim(doc)
    verts = _vectors(doc.get("vertices"), n, "vertices")
    if not verts:
        raise ParseError("a polytope needs at least one vertex")
    return Polytope(verts, n)


def polytope_to_json(P: Polytope) -> dict:
    return {"dim": P.ambient_dim, "vertices": [[qstr(x) for x in v] for v in P.vertices]}


# -- cones and fans ---------------------------------------------------------

def cone_from_json(doc, n: int) -> Cone:
    rays = _vectors(doc.get("rays", []), n, "rays")
    lin = _vectors(doc.get("lineality", []), n, "lineality")
    return Cone(rays, lin, n)


def cone_to_json(c: Cone) -> dict:
    d = {"rays": [_int_vector(r) for r in c.rays]}
    d["lineality"] = [_int_vector(l) for l in c.lineality]
    return d


def fan_from_json(doc) -> Fan:
    n = _dim(doc)
    cones = [cone_from_json(c, n) for c in doc.get("cones", [])]
    return Fan(cones, n)


def fan_to_json(F: Fan, h0=None) -> dict:
    d = {"dim": F.ambient_dim, "cones": [cone_to_json(c) for c in F.maximal_cones()]}
    if h0 is not None:
        d["h0"] = [qstr(x) for x in h0]
    return d


def fan_reference(doc):
    """Optional reference support vector stored next to a fan."""
    h0 = doc.get("h0")
    return None if h0 is None else [_rational(x) for x in h0]


# -- cycles -----------------------------------------------------------------

def cycle_from_json(doc, *, check: bool = True) -> TropicalCycle:
    n = _dim(doc)
    k = doc.get("cycle_dim")
    if not isinstance(k, int):
        raise ParseError("missing or invalid 'cycle_dim'")
    items = []
    for c in doc.get("cones", []):
        items.append((cone_from_json(c, n), _rational(c.get("weight", 1))))
    return TropicalCycle(n, k, items, check=check)


def cycle_to_json(C: TropicalCycle) -> dict:
    cones = []
    for c, w in C.support_cones():
        d = cone_to_json(c)
        d["weight"] = qstr(w)
        cones.append(d)
    return {"dim": C.ambient_dim, "cycle_dim": C.cycle_dim, "cones": cones}


# -- files ------------------------------------------------------------------

def load(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
