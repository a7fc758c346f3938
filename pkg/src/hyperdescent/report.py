"""JSON rendering of curves, records and reports.

Rationals and anything that can outgrow a double are written as decimal
strings ("-45/32", "2073600").  Keys are sorted so the bytes only depend on
the input.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .arith import SquareClassQ
from .descent import PAIRS, SIGNS, BoundReport, CurveData, DescentRecord, DescentTag, ThueInstance, TallyReport
from .multiquad import MQElement

SCHEMA_VERSION = 1


def rat(q) -> str:
    return str(Fraction(q))


def element(x: MQElement) -> dict:
    """Coordinates over the basis prod_{i in T} sqrt(gens_i), T in bitmask order."""
    return {"field": [str(g) for g in x.field.gens], "coords": [rat(c) for c in x.coords()]}


def square_class(g: SquareClassQ) -> str:
    return str(g.value)


def point(pt) -> list[str]:
    return [rat(pt[0]), rat(pt[1])]


def curve(c: CurveData) -> dict:
    return {
        "f": [str(a) for a in c.f],
        "S": list(c.S),
        "degree": c.degree,
        "disc": str(c.disc),
        "rational_roots": [rat(r) for r in c.rational_roots],
    }


def tag(t: DescentTag) -> dict:
    return {
        "triple": [rat(k) for k in t.triple],
        "gamma": [square_class(g) for g in t.gammas],
        **{name: element(v) for name, v in t.slots().items()},
    }


def thue(inst: ThueInstance) -> dict:
    return {"sign": inst.sign, "A": element(inst.A), "B": element(inst.B), "X": element(inst.X), "Y": element(inst.Y)}


def _pair_name(pair, s) -> str:
    return f"{pair[0] + 1}{pair[1] + 1}{'+' if s > 0 else '-'}"


def record(rec: DescentRecord) -> dict:
    return {
        "point": point(rec.point),
        "tag": tag(rec.tag),
        "roots": [{"root": rat(r.root), "gamma": square_class(r.gamma), "eta": rat(r.eta)} for r in rec.roots],
        "lambda": [str(l) for l in rec.lambdas],
        "mu": [rat(m) for m in rec.mus],
        "factors": {_pair_name(p, s): element(rec.factors[(p, s)]) for p in PAIRS for s in SIGNS},
        "v": {_pair_name(p, s): element(rec.vs[(p, s)]) for p in PAIRS for s in SIGNS},
        "zeta": {_pair_name(p, s): element(rec.zetas[(p, s)]) for p in PAIRS for s in SIGNS},
        "thue": [thue(t) for t in rec.thue],
    }


def points_report(c: CurveData, box, pts) -> dict:
    return {
        "kind": "points",
        "schema": SCHEMA_VERSION,
        "curve": curve(c),
        "box": {"H": box.H, "B": box.B},
        "count": len(pts),
        "points": [point(p) for p in pts],
    }


def descend_report(c: CurveData, records, errors) -> dict:
    return {
        "kind": "descend",
        "schema": SCHEMA_VERSION,
        "curve": curve(c),
        "records": [record(r) for r in records],
        "errors": [_error_entry(*e) for e in errors],
    }


def _error_entry(pt, triple, name, msg) -> dict:
    return {"point": point(pt), "triple": [rat(k) for k in triple], "error": name, "message": msg}


def tally_report(rep: TallyReport, triple_policy: str) -> dict:
    S = len(rep.curve.S)
    return {
        "kind": "tally",
        "schema": SCHEMA_VERSION,
        "curve": curve(rep.curve),
        "triple_policy": triple_policy,
        "points": [point(p) for p in rep.points],
        "weierstrass": [point(p) for p in rep.weierstrass],
        "weierstrass_count": len(rep.weierstrass),
        "records": [{"point": point(r.point), "tag": tag(r.tag)} for r in rep.records],
        "errors": [_error_entry(*e) for e in rep.errors],
        "fibers": [{"tag": tag(t), "points": [point(p) for p in sorted(pts)]} for t, pts in rep.tag_fibers],
        "distinct_tags": rep.distinct_tags,
        "max_tag_fiber": rep.max_tag_fiber,
        "max_fiber": rep.max_fiber,
        "fiber_sizes": rep.fiber_sizes,
        "bound": {
            "U_per_root": str(rep.U_size),
            "V_per_pair": {f"{p[0] + 1}{p[1] + 1}": str(v) for p, v in rep.V_sizes.items()},
            "V_ceiling": f"3^{rep.V_ceiling_exponent}",
            "skeleton": str(rep.skeleton_bound),
            "symbolic": f"O(1)^{rep.curve.degree ** 3 * (1 + S)}",
            "exponent": {"d": rep.curve.degree, "num_S": S, "value": rep.curve.degree**3 * (1 + S)},
        },
    }


def bound_report(rep: BoundReport) -> dict:
    return {
        "kind": "bound",
        "schema": SCHEMA_VERSION,
        "curve": curve(rep.curve),
        "factors": [[str(a) for a in g] for g in rep.factors],
        "two_torsion": rep.contributions,
        "class_group_product": str(rep.class_group_product),
        "exponent": {"d": rep.d, "num_S": rep.num_S, "value": rep.exponent},
        "symbolic": f"{rep.class_group_product} * O(1)^{rep.exponent}",
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
