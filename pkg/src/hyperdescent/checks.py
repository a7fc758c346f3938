"""Exact re-verification of descent records, shared by selftest and the test suite."""

from __future__ import annotations

from dataclasses import dataclass, field

from .descent import PAIRS, SIGNS, CurveData, DescentRecord, recover_x, tally
from .errors import DescentError
from .multiquad import s_unit_test

IDENTITIES = ("two_descent", "factor_product", "s_unit", "cube_round_trip", "linear", "thue", "recovery")


@dataclass
class CheckResult:
    counts: dict = field(default_factory=lambda: {k: 0 for k in IDENTITIES})
    failures: list = field(default_factory=list)  # (point, identity, detail)
    max_candidates: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "CheckResult") -> None:
        for k, v in other.counts.items():
            self.counts[k] += v
        self.failures.extend(other.failures)
        self.max_candidates = max(self.max_candidates, other.max_candidates)


def check_record(rec: DescentRecord, curve: CurveData) -> CheckResult:
    res = CheckResult()
    x = rec.x

    def note(name, ok, detail=""):
        res.counts[name] += 1
        if not ok:
            res.failures.append((rec.point, name, detail))

    for k in range(3):
        note("two_descent", x - rec.tag.triple[k] == rec.lambdas[k] * rec.mus[k] ** 2, f"root {k + 1}")
    kappa = rec.tag.triple
    for k, l in PAIRS:
        note("factor_product", rec.factors[((k, l), 1)] * rec.factors[((k, l), -1)] == kappa[l] - kappa[k], f"pair {k + 1}{l + 1}")
        for s in SIGNS:
            key = ((k, l), s)
            note("s_unit", s_unit_test(rec.factors[key], curve.S), str(key))
            note("cube_round_trip", rec.vs[key] * rec.zetas[key] ** 3 == rec.factors[key], str(key))
    for s in SIGNS:
        lhs = rec.lifted("factors", (0, 1), s) - rec.lifted("factors", (1, 2), s) * s - rec.lifted("factors", (0, 2), -1)
        note("linear", lhs.is_zero(), f"sign {s}")
    for inst in rec.thue:
        note("thue", inst.holds() and not inst.A.is_zero() and not inst.B.is_zero(), f"sign {inst.sign}")
    try:
        cands = recover_x(rec.tag, *rec.X, curve.S)
    except DescentError as exc:
        note("recovery", False, f"{type(exc).__name__}: {exc}")
    else:
        res.max_candidates = len(cands)
        limit = 2 if all(l > 0 for l in rec.lambdas) else 6
        note("recovery", x in cands and len(cands) <= limit, f"{len(cands)} candidates")
    return res


def check_curve(curve: CurveData, points, triple_policy: str = "first"):
    """Tally the points and re-verify every record; returns (TallyReport, CheckResult)."""
    rep = tally(curve, points, triple_policy)
    res = CheckResult()
    for rec in rep.records:
        res.merge(check_record(rec, curve))
    for pt, tr, name, msg in rep.errors:
        res.failures.append((pt, "descent", f"{name}: {msg}"))
    return rep, res
