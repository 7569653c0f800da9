"""``trop``: batch front end over JSON files.

Exit status is 0 on success, 2 on domain errors (unbalanced input,
dimension mismatch, disagreeing degrees) and 1 on I/O or parse failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import factorial

from . import io
from .fan import FanError, fan_covers_support
from .kp_ring import (
    RingError,
    chamber_fan,
    class_of_polytope,
    ring_of_fan,
    top_pairing,
    volume_polynomial,
)
from .lattice_linalg import LinearAlgebraError
from .polytope import PolytopeError, minkowski_sum, mixed_volume
from .tropical_cycle import (
    CycleError,
    equivalent,
    intersection_number_of_hypersurfaces,
    stable_intersection_number,
    stable_product,
    tropical_hypersurface,
)

DOMAIN_ERRORS = (CycleError, FanError, PolytopeError, RingError, LinearAlgebraError)


class DomainFailure(Exception):
    """A computed result that the caller must treat as a failure (exit 2)."""

    def __init__(self, doc):
        super().__init__(doc)
        self.doc = doc


def _polytopes(paths):
    return [io.polytope_from_json(io.load(p)) for p in paths]


def _cycle(path, check=True):
    return io.cycle_from_json(io.load(path), check=check)


def _reference(args, F, fan_doc):
    if getattr(args, "h0", None):
        return [io._rational(x) for x in args.h0.split(",")]
    if getattr(args, "reference", None):
        return class_of_polytope(F, io.polytope_from_json(io.load(args.reference)))
    h0 = io.fan_reference(fan_doc)
    if h0 is None:
        raise RingError("no reference support vector: pass --h0, --reference, or put 'h0' in the fan file")
    return h0


# -- verbs ------------------------------------------------------------------

def cmd_balance(args):
    C = _cycle(args.cycle, check=False)
    report = C.balance_report()
    doc = {"balanced": report.balanced}
    if not report.balanced:
        doc["violation"] = {"cone": io.cone_to_json(report.cone),
                            "residual": [io.qstr(x) for x in report.residual]}
        raise DomainFailure(doc)
    return doc


def cmd_sum(args):
    C = _cycle(args.cycles[0])
    for p in args.cycles[1:]:
        C = C + _cycle(p)
    return io.cycle_to_json(C)


def _intersection_doc(res):
    return {
        "value": io.qstr(res.value),
        "seed": res.seed,
        "vector": [io.qstr(x) for x in res.vector],
        "pairs": [{"i": p.i, "j": p.j, "index": p.index, "contribution": io.qstr(p.contribution)}
                  for p in res.pairs],
    }


def cmd_intersect(args):
    A, B = _cycle(args.a), _cycle(args.b)
    if A.cycle_dim + B.cycle_dim == A.ambient_dim:
        return _intersection_doc(stable_intersection_number(A, B, args.seed))
    return {"cycle": io.cycle_to_json(stable_product(A, B, args.seed)), "seed": args.seed}


def cmd_degree(args):
    polys = _polytopes(args.polytopes)
    n = len(polys)
    trop = intersection_number_of_hypersurfaces(*polys, seed=args.seed)
    mv = mixed_volume(*polys)
    bkk = factorial(n) * mv
    doc = {"tropical": io.qstr(trop), "mixed_volume": io.qstr(mv), "bkk": io.qstr(bkk),
           "seed": args.seed}
    values = [trop, bkk]
    if args.fan:
        if args.fan == "auto":
            F, h0 = chamber_fan(polys)
        else:
            fan_doc = io.load(args.fan)
            F = io.fan_from_json(fan_doc)
            h0 = _reference(args, F, fan_doc)
        V = volume_polynomial(F, h0)
        kp = top_pairing(F, V, *[class_of_polytope(F, P) for P in polys])
        doc["kp_top_pairing"] = io.qstr(kp)
        values.append(kp)
    doc["agree"] = len(set(values)) == 1
    if not doc["agree"]:
        raise DomainFailure({"error": {"type": "DegreeMismatch", "message": "degrees disagree"},
                             **doc})
    return doc


def cmd_hypersurface(args):
    return io.cycle_to_json(tropical_hypersurface(_polytopes([args.polytope])[0]))


def cmd_mixed_volume(args):
    polys = _polytopes(args.polytopes)
    mv = mixed_volume(*polys)
    return {"mixed_volume": io.qstr(mv), "bkk": io.qstr(factorial(len(polys)) * mv)}


def cmd_kp_ring(args):
    fan_doc = io.load(args.fan)
    F = io.fan_from_json(fan_doc)
    R = ring_of_fan(F, _reference(args, F, fan_doc))
    return R.report()


def cmd_top_pairing(args):
    fan_doc = io.load(args.fan)
    F = io.fan_from_json(fan_doc)
    polys = _polytopes(args.polytopes)
    V = volume_polynomial(F, _reference(args, F, fan_doc))
    classes = [class_of_polytope(F, P) for P in polys]
    return {"value": io.qstr(top_pairing(F, V, *classes)),
            "classes": [[io.qstr(x) for x in h] for h in classes],
            "rays": [list(r) for r in F.rays()],
            "normalization": "V"}


def cmd_covers(args):
    F = io.fan_from_json(io.load(args.fan))
    C = _cycle(args.cycle, check=False)
    return {"covers": fan_covers_support(F, C)}


def cmd_equivalent(args):
    return {"equivalent": equivalent(_cycle(args.a, check=False), _cycle(args.b, check=False))}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trop", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--output", "-o", help="write the result document here instead of stdout")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("balance", help="check the balancing condition of a cycle")
    s.add_argument("cycle")
    s.set_defaults(func=cmd_balance)

    s = sub.add_parser("sum", help="add cycles of equal dimension")
    s.add_argument("cycles", nargs="+")
    s.set_defaults(func=cmd_sum)

    s = sub.add_parser("intersect", help="stable intersection of two cycles")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--seed", type=int, default=1)
    s.set_defaults(func=cmd_intersect)

    s = sub.add_parser("degree", help="intersection number of n tropical hypersurfaces")
    s.add_argument("polytopes", nargs="+")
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--fan", help="fan file for the volume polynomial check, or 'auto'")
    s.add_argument("--h0", help="comma separated reference support vector")
    s.add_argument("--reference", help="polytope whose class is the reference support vector")
    s.set_defaults(func=cmd_degree)

    s = sub.add_parser("hypersurface", help="tropical hypersurface of a lattice polytope")
    s.add_argument("polytope")
    s.set_defaults(func=cmd_hypersurface)

    s = sub.add_parser("mixed-volume", help="mixed volume of n polytopes in R^n")
    s.add_argument("polytopes", nargs="+")
    s.set_defaults(func=cmd_mixed_volume)

    for verb, func, extra in (("kp-ring", cmd_kp_ring, False),
                              ("top-pairing", cmd_top_pairing, True)):
        s = sub.add_parser(verb)
        s.add_argument("fan")
        if extra:
            s.add_argument("polytopes", nargs="+")
        s.add_argument("--h0")
        s.add_argument("--reference")
        s.set_defaults(func=func)

    s = sub.add_parser("covers", help="does the fan support contain the cycle")
    s.add_argument("fan")
    s.add_argument("cycle")
    s.set_defaults(func=cmd_covers)

    s = sub.add_parser("equivalent", help="compare two cycles up to refinement")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_equivalent)
    return p


def _render(doc, fmt: str) -> str:
    if fmt == "json":
        return io.dumps(doc)
    lines = []
    for k in sorted(doc):
        v = doc[k]
        lines.append(f"{k}: {v if isinstance(v, (str, int, bool)) else json.dumps(v, sort_keys=True)}")
    return "\n".join(lines)


def _emit(doc, args, stream):
    text = _render(doc, args.format) + "\n"
    if args.output and stream is sys.stdout:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stream.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except DomainFailure as f:
        _emit(f.doc, args, sys.stdout)
        return 2
    except io.ParseError as e:
        _emit({"error": {"type": "ParseError", "message": str(e)}}, args, sys.stdout)
        return 1
    except DOMAIN_ERRORS as e:
        _emit({"error": {"type": type(e).__name__, "message": str(e)}}, args, sys.stdout)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
        _emit({"error": {"type": type(e).__name__, "message": str(e)}}, args, sys.stdout)
        return 1
    _emit(doc, args, sys.stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
