"""The descent on y^2 = f(x) over Q with three rational roots.

For an S-integral point (x, y) and roots k1, k2, k3 of f:

* 2-descent: ``x - k_i = lam_i * mu_i^2`` with lam_i squarefree and S-supported.
* In ``L_kl = Q(sqrt lam_k, sqrt lam_l)`` the two factors
  ``sqrt(lam_k) mu_k +- sqrt(lam_l) mu_l`` of ``k_l - k_k`` are S-units.
* 3-descent: each factor is written ``v * zeta^3`` with v canonical.
* The relations between the factors become two cubic Thue equations
  ``A X^3 -+ B Y^3 = 1`` over ``L_123``.
* ``(tag, X)`` recovers x, which is how a point is counted by its tag.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import poly
from .arith import PrimeSet, SquareClassQ, factorint, rational_sqrt_exact, s_part_decompose, square_class_decompose
from .errors import (
    DegreeTooSmall,
    DescentError,
    DiscriminantNotSUnit,
    DiscriminantZero,
    FactorDegreeUnsupported,
    FactorsNotCoprime,
    FewerThanThreeRationalRoots,
    HypothesisViolation,
    InconsistentData,
    InvariantFailure,
    NotAnSUnit,
    NotMonic,
    NotOnCurve,
    TotalDegreeTooSmall,
    WeierstrassPoint,
)
from .multiquad import (
    MQElement,
    MQField,
    build_s_unit_basis,
    cube_class_decompose,
    embed,
    is_cube,
    mq_field_build,
    mq_sqrt,
    s_unit_test,
)
from .quadratic import QuadField, s_class_group_two_torsion

PAIRS = ((0, 1), (1, 2), (0, 2))
SIGNS = (1, -1)


@dataclass(frozen=True)
class CurveData:
    f: tuple[int, ...]  # ascending coefficients, monic
    S: PrimeSet
    rational_roots: tuple[Fraction, ...]
    disc: int

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    def __call__(self, x) -> Fraction:
        return poly.evaluate(self.f, Fraction(x))

    @property
    def default_triple(self) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(self.rational_roots[:3])


def validate_curve(f: Sequence[int], S: PrimeSet, require_three_roots: bool = True) -> CurveData:
    if any(Fraction(c).denominator != 1 for c in f):
        raise NotMonic("coefficients must be integers")
    f = tuple(int(c) for c in f)
    while f and f[-1] == 0:
        f = f[:-1]
    if not f or f[-1] != 1:
        raise NotMonic("leading coefficient must be 1")
    if len(f) - 1 < 5:
        raise DegreeTooSmall(f"degree {len(f) - 1} < 5")
    disc = poly.discriminant(f)
    if disc == 0:
        raise DiscriminantZero("f is not squarefree")
    disc = int(disc)
    _, _, cofactor = s_part_decompose(disc, S)
    if cofactor != 1:
        raise DiscriminantNotSUnit(min(factorint(cofactor)))
    roots = [Fraction(r) for r in poly.integer_roots(f)]
    rest = list(f)
    for r in roots:
        q, rem = poly.divmod_poly(rest, [-r, 1])
        if rem:
            raise InvariantFailure(f"{r} is not a root")
        rest = q
    if any(poly.evaluate(rest, r) == 0 for r in poly.integer_roots([int(c) for c in rest])):
        raise InvariantFailure("cofactor still has a rational root")
    curve = CurveData(f, S, tuple(roots), disc)
    if require_three_roots and len(roots) < 3:
        raise FewerThanThreeRationalRoots(f"only {len(roots)} rational roots")
    return curve


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class RootDescent:
    root: Fraction
    gamma: SquareClassQ
    eta: Fraction


@dataclass(frozen=True)
class DescentTag:
    """(gamma_1, gamma_2, gamma_3, v12+, v12-, v23+, v23-, v13-) for a root triple."""

    triple: tuple[Fraction, Fraction, Fraction]
    gammas: tuple[SquareClassQ, SquareClassQ, SquareClassQ]
    v12p: MQElement
    v12m: MQElement
    v23p: MQElement
    v23m: MQElement
    v13m: MQElement

    @property
    def lambdas(self) -> tuple[int, int, int]:
        return tuple(g.value for g in self.gammas)

    def slots(self) -> dict[str, MQElement]:
        return {"v12+": self.v12p, "v12-": self.v12m, "v23+": self.v23p, "v23-": self.v23m, "v13-": self.v13m}

    def replace(self, slot: str, value: MQElement) -> "DescentTag":
        names = {"v12+": "v12p", "v12-": "v12m", "v23+": "v23p", "v23-": "v23m", "v13-": "v13m"}
        kw = {n: getattr(self, n) for n in names.values()}
        kw[names[slot]] = value
        return DescentTag(self.triple, self.gammas, **kw)

    def sort_key(self):
        return (
            tuple(self.triple),
            self.lambdas,
            tuple((v.field.gens, v.nums, v.den) for v in self.slots().values()),
        )


@dataclass(frozen=True)
class ThueInstance:
    """A * X^3 - sign * B * Y^3 = 1 over the compositum field."""

    A: MQElement
    B: MQElement
    sign: int
    X: MQElement
    Y: MQElement

    def lhs(self) -> MQElement:
        return self.A * self.X**3 - self.B * self.Y**3 * self.sign

    def holds(self) -> bool:
        return self.lhs() == 1

    @property
    def form_discriminant(self) -> MQElement:
        # disc(a X^3 + d Y^3) = -27 a^2 d^2
        return self.A * self.A * self.B * self.B * (-27)


@dataclass(frozen=True)
class DescentRecord:
    point: tuple[Fraction, Fraction]
    tag: DescentTag
    roots: tuple[RootDescent, ...]
    lambdas: tuple[int, int, int]
    mus: tuple[Fraction, Fraction, Fraction]
    pair_fields: dict
    compositum: MQField
    factors: dict  # (pair, sign) -> sqrt(lam_k) mu_k + sign sqrt(lam_l) mu_l in L_kl
    vs: dict
    zetas: dict
    thue: tuple[ThueInstance, ThueInstance]

    @property
    def x(self) -> Fraction:
        return self.point[0]

    def lifted(self, name: str, pair, sign) -> MQElement:
        return embed(getattr(self, name)[(pair, sign)], self.compositum)

    @property
    def X(self) -> tuple[MQElement, MQElement]:
        return self.thue[0].X, self.thue[1].X

    @property
    def Y(self) -> tuple[MQElement, MQElement]:
        return self.thue[0].Y, self.thue[1].Y

    def fiber_key(self):
        return (self.tag.sort_key(),) + tuple((e.nums, e.den) for e in self.X + self.Y)


def _check_point(pt, curve: CurveData) -> tuple[Fraction, Fraction]:
    x, y = Fraction(pt[0]), Fraction(pt[1])
    fx = curve(x)
    if y * y != fx:
        raise NotOnCurve(f"({x}, {y}) is not on the curve")
    if fx == 0:
        raise WeierstrassPoint(f"({x}, {y}) is a Weierstrass point")
    return x, y


def descend_point(pt, curve: CurveData, triple: Sequence | None = None) -> DescentRecord:
    """Run both descents on one non-Weierstrass point.

    ``triple`` names three distinct rational roots by value; the default is
    the three smallest.
    """
    x, y = _check_point(pt, curve)
    S = curve.S
    triple = tuple(Fraction(r) for r in (triple if triple is not None else curve.default_triple))
    if len(set(triple)) != 3 or any(r not in curve.rational_roots for r in triple):
        raise ValueError(f"{triple} is not a triple of distinct rational roots")

    roots = []
    for r in curve.rational_roots:
        g, e = square_class_decompose(x - r, S)
        roots.append(RootDescent(r, g, e))
    by_root = {rd.root: rd for rd in roots}
    kappa = triple
    gammas = tuple(by_root[k].gamma for k in kappa)
    lam = tuple(g.value for g in gammas)
    mu = tuple(by_root[k].eta for k in kappa)
    for k in range(3):
        if x - kappa[k] != lam[k] * mu[k] ** 2:
            raise InvariantFailure("x - kappa != lambda * mu^2")

    M, _ = mq_field_build(lam)
    fields, factors, vs, zetas = {}, {}, {}, {}
    for k, l in PAIRS:
        L, _ = mq_field_build([lam[k], lam[l]])
        fields[(k, l)] = L
        basis = build_s_unit_basis(L, S)
        sk, sl = L.sqrt_of(lam[k]) * mu[k], L.sqrt_of(lam[l]) * mu[l]
        for s in SIGNS:
            g = sk + sl * s
            if not s_unit_test(g, S):
                raise NotAnSUnit(f"factor of kappa_{l + 1} - kappa_{k + 1} is not an S-unit")
            v, z = cube_class_decompose(g, basis, check_s_unit=False)
            factors[((k, l), s)], vs[((k, l), s)], zetas[((k, l), s)] = g, v, z
        if factors[((k, l), 1)] * factors[((k, l), -1)] != kappa[l] - kappa[k]:
            raise InvariantFailure("factor product differs from the root difference")

    up = lambda d, key: embed(d[key], M)
    g13m = up(factors, ((0, 2), -1))
    v13m, z13m = up(vs, ((0, 2), -1)), up(zetas, ((0, 2), -1))
    thue = []
    for s in SIGNS:
        # (a + s b) - s (b + s c) - (a - c) = 0
        if up(factors, ((0, 1), s)) - up(factors, ((1, 2), s)) * s - g13m != 0:
            raise InvariantFailure("linear relation between the factors fails")
        inst = ThueInstance(
            A=up(vs, ((0, 1), s)) / v13m,
            B=up(vs, ((1, 2), s)) / v13m,
            sign=s,
            X=up(zetas, ((0, 1), s)) / z13m,
            Y=up(zetas, ((1, 2), s)) / z13m,
        )
        if not inst.holds():
            raise InvariantFailure("Thue identity fails")
        thue.append(inst)

    tag = DescentTag(
        triple=kappa,
        gammas=gammas,
        v12p=vs[((0, 1), 1)],
        v12m=vs[((0, 1), -1)],
        v23p=vs[((1, 2), 1)],
        v23m=vs[((1, 2), -1)],
        v13m=vs[((0, 2), -1)],
    )
    return DescentRecord(
        point=(x, y),
        tag=tag,
        roots=tuple(roots),
        lambdas=lam,
        mus=mu,
        pair_fields=fields,
        compositum=M,
        factors=factors,
        vs=vs,
        zetas=zetas,
        thue=tuple(thue),
    )


def recover_x(tag: DescentTag, X_plus: MQElement, X_minus: MQElement, S: PrimeSet) -> set[Fraction]:
    """Candidates for x from a tag and the X-coordinates of both Thue solutions.

    zeta13-^6 = (k2 - k1) / (v12+ v12- (X+ X-)^3) fixes zeta13- up to roots of
    unity; then 2 sqrt(lam1) mu1 = v12+ zeta12+^3 + v12- zeta12-^3 and
    x = k1 + (2 sqrt(lam1) mu1)^2 / 4.  Candidates whose data disagree with
    the tag are dropped; if none survive, InconsistentData is raised.
    """
    k1, k2, k3 = tag.triple
    lam = tag.lambdas
    M, _ = mq_field_build(lam)
    if X_plus.field != M or X_minus.field != M:
        raise InconsistentData("X-coordinates do not live in the compositum of the tag")
    basis = build_s_unit_basis(M, S)
    v = {name: embed(val, M) for name, val in tag.slots().items()}
    try:
        sixth = (v["v12+"] * v["v12-"] * (X_plus * X_minus) ** 3).inverse() * (k2 - k1)
    except ZeroDivisionError:
        raise InconsistentData("degenerate tag data") from None
    if not s_unit_test(sixth, S):
        raise InconsistentData("zeta13-^6 is not an S-unit")
    rep, cube_root = cube_class_decompose(sixth, basis, check_s_unit=False)
    if rep != 1:
        raise InconsistentData("zeta13-^6 is not a cube")
    zetas = []
    for rho in M.cube_roots_of_unity:
        w = mq_sqrt(cube_root * rho)
        if w is not None:
            zetas += [w, -w]

    sq = [M.sqrt_of(l) for l in lam]
    out = set()
    for z13 in zetas:
        z12 = {1: X_plus * z13, -1: X_minus * z13}
        two_a = v["v12+"] * z12[1] ** 3 + v["v12-"] * z12[-1] ** 3
        t2 = two_a * two_a
        if not t2.is_rational():
            continue
        x = k1 + t2.rational_value() / 4
        mus = [rational_sqrt_exact((x - k) / l) for k, l in zip(tag.triple, lam)]
        if any(m is None for m in mus):
            continue
        a = [sq[i] * mus[i] for i in range(3)]
        fac = {(p, s): a[p[0]] + a[p[1]] * s for p in PAIRS for s in SIGNS}
        if any(f.is_zero() for f in fac.values()):
            continue
        if v["v13-"] * z13**3 != fac[((0, 2), -1)]:
            continue
        if any(v[f"v12{'+' if s > 0 else '-'}"] * z12[s] ** 3 != fac[((0, 1), s)] for s in SIGNS):
            continue
        if not all(is_cube(fac[((1, 2), s)] / v[f"v23{'+' if s > 0 else '-'}"], basis) for s in SIGNS):
            continue
        out.add(x)
    if not out:
        raise InconsistentData("no candidate x is consistent with the tag")
    return out


# ---------------------------------------------------------------------------
# tally


@dataclass
class TallyReport:
    curve: CurveData
    points: list
    weierstrass: list
    records: list  # DescentRecord, in point order then triple order
    errors: list  # (point, triple, error class name, message)
    tag_fibers: list  # [(tag, [points])], canonical order
    fiber_sizes: list  # points per (tag + zeta data)
    U_size: int
    V_sizes: dict  # pair -> max observed canonical cube-class set size
    V_ceiling_exponent: int
    skeleton_bound: int

    @property
    def distinct_tags(self) -> int:
        return len(self.tag_fibers)

    @property
    def max_tag_fiber(self) -> int:
        return max((len(p) for _, p in self.tag_fibers), default=0)

    @property
    def max_fiber(self) -> int:
        return max(self.fiber_sizes, default=0)


def _triples(curve: CurveData, policy: str):
    if policy == "first":
        return [curve.default_triple]
    if policy == "all":
        return list(itertools.combinations(curve.rational_roots, 3))
    raise ValueError(f"unknown triple policy {policy!r}")


def _descend_all(args):
    pt, curve, triples = args
    out = []
    for tr in triples:
        try:
            out.append(("ok", tr, descend_point(pt, curve, tr)))
        except DescentError as exc:
            out.append(("err", tr, exc))
    return out


def tally(curve: CurveData, points: Sequence, triple_policy: str = "first", threads: int | None = None) -> TallyReport:
    if threads is None:
        threads = int(os.environ.get("SIEGEL_THREADS", "1") or 1)
    triples = _triples(curve, triple_policy)
    points = [(Fraction(x), Fraction(y)) for x, y in points]
    weier, work = [], []
    for pt in points:
        if pt[1] * pt[1] != curve(pt[0]):
            raise NotOnCurve(f"{pt} is not on the curve")
        (weier if pt[1] == 0 else work).append(pt)
    jobs = [(pt, curve, triples) for pt in work]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_descend_all, jobs))
    else:
        results = [_descend_all(j) for j in jobs]

    records, errors = [], []
    by_tag = defaultdict(list)
    by_fiber = defaultdict(list)
    V_sizes = {p: 1 for p in PAIRS}
    for pt, res in zip(work, results):
        for status, tr, val in res:
            if status == "err":
                errors.append((pt, tr, type(val).__name__, str(val)))
                continue
            records.append(val)
            by_tag[val.tag].append(pt)
            by_fiber[val.fiber_key()].append(pt)
            for p in PAIRS:
                V_sizes[p] = max(V_sizes[p], build_s_unit_basis(val.pair_fields[p], curve.S).cube_class_count)
    U = 2 ** (1 + len(curve.S))
    n_tr = len(triples)
    skeleton = n_tr * U**3 * math.prod(V_sizes.values())
    fibers = sorted(by_tag.items(), key=lambda kv: kv[0].sort_key())
    return TallyReport(
        curve=curve,
        points=points,
        weierstrass=sorted(set(weier)),
        records=records,
        errors=errors,
        tag_fibers=fibers,
        fiber_sizes=sorted(len(v) for v in by_fiber.values()),
        U_size=U,
        V_sizes=V_sizes,
        V_ceiling_exponent=4 + 4 * len(curve.S),
        skeleton_bound=skeleton,
    )


# ---------------------------------------------------------------------------
# class-group side of the bound


@dataclass
class BoundReport:
    curve: CurveData
    factors: list  # integer coefficient lists
    contributions: list  # per factor 2-torsion size of Cl(O_{K_g,S})
    class_group_product: int
    d: int
    num_S: int

    @property
    def exponent(self) -> int:
        """d^3 * ([K:Q] + #S) for K = Q; the O(1) base stays symbolic."""
        return self.d**3 * (1 + self.num_S)


def bound_report(curve: CurveData, factors: Sequence[Sequence[int]]) -> BoundReport:
    facs = [tuple(int(c) for c in g) for g in factors]
    if not facs:
        raise TotalDegreeTooSmall("no factors selected")
    for g in facs:
        if poly.degree(g) > 2:
            raise FactorDegreeUnsupported(f"factor {list(g)} has degree {poly.degree(g)} > 2")
        if poly.degree(g) < 1 or g[-1] != 1:
            raise HypothesisViolation(f"factor {list(g)} must be monic of degree 1 or 2")
        if poly.divmod_poly(curve.f, g)[1]:
            raise HypothesisViolation(f"factor {list(g)} does not divide f")
        if poly.degree(g) == 2 and rational_sqrt_exact(Fraction(g[1] ** 2 - 4 * g[0])) is not None:
            raise HypothesisViolation(f"factor {list(g)} is reducible over Q")
    if len(set(facs)) != len(facs):
        raise FactorsNotCoprime("repeated factor")
    for g, h in itertools.combinations(facs, 2):
        if poly.resultant(g, h) == 0:
            raise FactorsNotCoprime(f"{list(g)} and {list(h)} share a root")
    total = sum(poly.degree(g) for g in facs)
    if total < 3:
        raise TotalDegreeTooSmall(f"total degree {total} < 3")
    prod = [1]
    for g in facs:
        prod = poly.mul(prod, g)
    if poly.divmod_poly(curve.f, prod)[1]:
        raise HypothesisViolation("product of the factors does not divide f")
    contrib = []
    for g in facs:
        if poly.degree(g) == 1:
            contrib.append(1)
        else:
            disc = g[1] ** 2 - 4 * g[0]
            k = QuadField(SquareClassQ.from_int(disc).value)
            contrib.append(s_class_group_two_torsion(k, curve.S))
    return BoundReport(curve, [list(g) for g in facs], contrib, math.prod(contrib), curve.degree, len(curve.S))
