"""Command-line front end.

Exit codes: 0 success, 1 the input violates a hypothesis (bad config, S too
small, point off the curve, ...), 2 an exact identity failed internally.
Errors are also written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import report
from .arith import PrimeSet, is_prime
from .checks import check_curve, check_record
from .corpus import generate_corpus
from .descent import CurveData, bound_report, descend_point, tally, validate_curve
from .errors import DescentError, InvariantFailure, ParseError, UnknownKey
from .points import SearchBox, enumerate_points

KEYS = ("f", "S", "H", "B", "triple_policy", "output")
DEFAULT_H = 1000
DEFAULT_B = 1

RUNNING_CURVE = {"f": [0, 6, -1, -7, 1, 1], "S": [2, 3, 5], "H": 10000, "B": 100}


@dataclass(frozen=True)
class RunConfig:
    f: tuple[int, ...]
    S: PrimeSet
    H: int = DEFAULT_H
    B: int = DEFAULT_B
    triple_policy: str = "first"
    output_path: str | None = None

    def curve(self, require_three_roots: bool = True) -> CurveData:
        return validate_curve(self.f, self.S, require_three_roots)

    def box(self) -> SearchBox:
        return SearchBox(self.H, self.B, self.S)


def _line_of(text: str, key: str) -> int | None:
    needle = json.dumps(key)
    for i, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return i
    return None


def _int(value, key, line) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", key, line)
    return value


def parse_config(text: str) -> RunConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, None, exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object", None, 1)
    for key in doc:
        if key not in KEYS:
            raise UnknownKey(f"unknown key {key!r}", key, _line_of(text, key))
    if "f" not in doc:
        raise ParseError("missing required key", "f", 1)
    line = lambda k: _line_of(text, k)
    f = doc["f"]
    if not isinstance(f, list) or not f:
        raise ParseError("expected a non-empty list of integers", "f", line("f"))
    f = tuple(_int(c, "f", line("f")) for c in f)
    S = doc.get("S", [])
    if not isinstance(S, list):
        raise ParseError("expected a list of primes", "S", line("S"))
    S = [_int(p, "S", line("S")) for p in S]
    for p in S:
        if p < 2 or not is_prime(p):
            raise ParseError(f"{p} is not prime", "S", line("S"))
    if len(set(S)) != len(S):
        raise ParseError("repeated prime", "S", line("S"))
    H = _int(doc.get("H", DEFAULT_H), "H", line("H"))
    B = _int(doc.get("B", DEFAULT_B), "B", line("B"))
    if H < 1 or B < 1:
        raise ParseError("bounds must be >= 1", "H" if H < 1 else "B", line("H" if H < 1 else "B"))
    policy = doc.get("triple_policy", "first")
    if policy not in ("first", "all"):
        raise ParseError(f"expected 'first' or 'all', got {policy!r}", "triple_policy", line("triple_policy"))
    out = doc.get("output")
    if out is not None and not isinstance(out, str):
        raise ParseError("expected a path string", "output", line("output"))
    return RunConfig(f, PrimeSet(tuple(sorted(S))), H, B, policy, out)


def load_config(path) -> RunConfig:
    return parse_config(Path(path).read_text())


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def parse_factors(spec: str) -> list[list[int]]:
    """'0,1;1,0,1' -> [[0, 1], [1, 0, 1]] (ascending coefficients)."""
    out = []
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            out.append([int(c) for c in chunk.split(",")])
        except ValueError:
            raise ParseError(f"bad factor {chunk!r}", "factors") from None
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_points(cfg: RunConfig, args) -> dict:
    curve = cfg.curve(require_three_roots=False)
    box = cfg.box()
    return report.points_report(curve, box, enumerate_points(curve, box))


def cmd_descend(cfg: RunConfig, args) -> dict:
    curve = cfg.curve()
    triple = [_rational(t) for t in args.triple.split(",")] if args.triple else None
    if (args.x is None) != (args.y is None):
        raise ParseError("--x and --y go together")
    if args.x is not None:
        rec = descend_point((_rational(args.x), _rational(args.y)), curve, triple)
        return report.descend_report(curve, [rec], [])
    records, errors = [], []
    for pt in enumerate_points(curve, cfg.box()):
        if pt[1] == 0:
            continue
        try:
            records.append(descend_point(pt, curve, triple))
        except DescentError as exc:
            errors.append((pt, triple or curve.default_triple, type(exc).__name__, str(exc)))
    return report.descend_report(curve, records, errors)


def cmd_tally(cfg: RunConfig, args) -> dict:
    curve = cfg.curve()
    policy = args.triples or cfg.triple_policy
    pts = enumerate_points(curve, cfg.box())
    return report.tally_report(tally(curve, pts, policy), policy)


def cmd_bound(cfg: RunConfig, args) -> dict:
    curve = cfg.curve(require_three_roots=False)
    return report.bound_report(bound_report(curve, parse_factors(args.factors)))


def cmd_corpus(args) -> dict:
    curves = generate_corpus(args.count, args.seed)
    return {
        "kind": "corpus",
        "seed": args.seed,
        "curves": [
            {"roots": list(c.roots), "config": {"f": list(c.curve.f), "S": list(c.curve.S), "H": DEFAULT_H, "B": DEFAULT_B}}
            for c in curves
        ],
    }


def run_selftest(corpus_size: int = 5, H: int = 1000) -> dict:
    """Re-verify every identity on the running curve and a small corpus."""
    results = []
    cfg = parse_config(json.dumps(RUNNING_CURVE))
    cases = [("running", cfg.curve(), cfg.box())]
    for c in generate_corpus(corpus_size, seed=0):
        cases.append((" ".join(map(str, c.roots)), c.curve, SearchBox(H, 1, c.curve.S)))
    failures = 0
    for name, curve, box in cases:
        rep, res = check_curve(curve, enumerate_points(curve, box), "all")
        bad = len(res.failures) + int(rep.max_fiber > 12) + int(rep.distinct_tags > rep.skeleton_bound)
        failures += bad
        results.append({"curve": name, "records": len(rep.records), "failures": bad, "checks": res.counts})
    rec = descend_point((3, 12), cases[0][1], (0, 1, -1))
    if rec.lambdas != (3, 2, 1) or rec.mus != (1, 1, 2) or not check_record(rec, cases[0][1]).ok:
        failures += 1
    return {"kind": "selftest", "cases": results, "failures": failures, "ok": failures == 0}


COMMANDS = {"points": cmd_points, "descend": cmd_descend, "tally": cmd_tally, "bound": cmd_bound}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperdescent", description="Descent on y^2 = f(x) with three rational roots.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help, config=True):
        p = sub.add_parser(name, help=help)
        if config:
            p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--output", help="write the report here instead of stdout")
        return p

    add("points", "enumerate points in the search box")
    p = add("descend", "run the descent on one point or on every enumerated point")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--triple", help="three rational roots, e.g. 0,1,-1")
    p = add("tally", "descend all points and count tags")
    p.add_argument("--triples", choices=("first", "all"))
    p = add("bound", "class-group side of the bound")
    p.add_argument("--factors", required=True, help="ascending coefficient lists separated by ';', e.g. '0,1;1,0,1'")
    add("selftest", "re-verify the identity suite on built-in curves", config=False)
    p = add("corpus", "generate a reproducible curve corpus", config=False)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    return ap


def _emit(doc: dict, output: str | None) -> None:
    text = report.dumps(doc)
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _fail(exc: Exception, code: int) -> int:
    doc = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    for attr in ("p", "field", "line"):
        if getattr(exc, attr, None) is not None:
            doc[attr] = getattr(exc, attr)
    sys.stderr.write(json.dumps(doc, sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "selftest":
            doc = run_selftest()
            _emit(doc, args.output)
            return 0 if doc["ok"] else 2
        if args.command == "corpus":
            _emit(cmd_corpus(args), args.output)
            return 0
        try:
            cfg = load_config(args.config)
        except OSError as exc:
            raise ParseError(str(exc), "config") from None
        _emit(COMMANDS[args.command](cfg, args), args.output or cfg.output_path)
        return 0
    except (InvariantFailure, ArithmeticError) as exc:
        return _fail(exc, 2)
    except (DescentError, ValueError) as exc:
        return _fail(exc, 1)


if __name__ == "__main__":
    sys.exit(main())
