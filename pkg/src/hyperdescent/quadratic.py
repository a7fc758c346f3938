"""Quadratic fields Q(sqrt d): elements, ideals as binary quadratic forms,
class groups, fundamental units and S-unit groups.

An ideal of the maximal order is stored as a form ``(a, b, c)`` with ``a > 0``
standing for the lattice ``[a, (-b + sqrt(D))/2]`` (``D`` the field
discriminant).  Composition of forms is then multiplication of ideals, and one
reduction step ``[a, beta] -> (conj(beta)/a) * [a, beta]`` lets us carry an
explicit generator along, which is how principal ideals get their generators.
Class groups are the wide (ideal) class groups of the maximal order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator

from .arith import PrimeSet, factorint, is_squarefree, s_part_decompose, valuation
from .errors import DiscriminantTooLarge, FieldMismatch, ZeroInput

CLASS_GROUP_DISC_BOUND = 10**7


@dataclass(frozen=True)
class QuadField:
    d: int

    def __post_init__(self):
        if self.d in (0, 1) or not is_squarefree(self.d):
            raise ValueError(f"{self.d} is not a squarefree integer other than 0, 1")

    @property
    def disc(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def is_real(self) -> bool:
        return self.d > 0

    def element(self, a, b=0, c=1) -> "QuadElement":
        return QuadElement.make(a, b, c, self.d)

    def one(self) -> "QuadElement":
        return QuadElement(1, 0, 1, self.d)

    def omega(self) -> "QuadElement":
        """Generator of the maximal order over Z."""
        if self.d % 4 == 1:
            return QuadElement(1, 1, 2, self.d)
        return QuadElement(0, 1, 1, self.d)


@dataclass(frozen=True)
class QuadElement:
    """``(a + b*sqrt(d)) / c`` with ``gcd(a, b, c) = 1`` and ``c > 0``."""

    a: int
    b: int
    c: int
    d: int

    @staticmethod
    def make(a, b, c, d) -> "QuadElement":
        a, b, c = Fraction(a), Fraction(b), Fraction(c)
        if c == 0:
            raise ZeroDivisionError("zero denominator")
        a, b = a / c, b / c
        den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        A, B = int(a * den), int(b * den)
        g = math.gcd(math.gcd(A, B), den)
        return QuadElement(A // g, B // g, den // g, d)

    @classmethod
    def rational(cls, q, d) -> "QuadElement":
        q = Fraction(q)
        return cls(q.numerator, 0, q.denominator, d)

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadElement.rational(other, self.d)
        if other.d != self.d:
            raise FieldMismatch(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")
        return other

    def __add__(self, other):
        o = self._check(other)
        return QuadElement.make(self.a * o.c + o.a * self.c, self.b * o.c + o.b * self.c, self.c * o.c, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        return QuadElement.make(
            self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.c * o.c, self.d
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadElement":
        return QuadElement(self.a, -self.b, self.c, self.d)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self.d * self.b * self.b, self.c * self.c)

    def trace(self) -> Fraction:
        return Fraction(2 * self.a, self.c)

    def inverse(self) -> "QuadElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0")
        cj = self.conj()
        return QuadElement.make(Fraction(cj.a, cj.c) / n, Fraction(cj.b, cj.c) / n, 1, self.d)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadElement(1, 0, 1, self.d), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and Fraction(self.a, self.c) == other
        if isinstance(other, QuadElement):
            return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        return self.trace().denominator == 1 and self.norm().denominator == 1

    def coords(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.a, self.c), Fraction(self.b, self.c)

    def log_abs(self) -> float:
        """log|x| in the real embedding sqrt(d) > 0 (d > 0 only)."""
        if self.d < 0:
            raise ValueError("log_abs needs a real field")
        if self.b == 0:
            return math.log(abs(self.a)) - math.log(self.c)
        if self.a == 0 or (self.a > 0) == (self.b > 0):
            return _log_sum(abs(self.a), abs(self.b), self.d) - math.log(self.c)
        # cancellation: use |x| = |N(x)| / |conj(x)|
        n = abs(self.a * self.a - self.d * self.b * self.b)
        return math.log(n) - _log_sum(abs(self.a), abs(self.b), self.d) - math.log(self.c)

    def __float__(self):
        return float(self.a + self.b * math.sqrt(self.d)) / self.c if self.d > 0 else float("nan")

    def __repr__(self):
        if self.b == 0:
            s = f"{self.a}"
        elif self.a == 0:
            s = f"{self.b}*sqrt({self.d})"
        else:
            s = f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt({self.d})"
        return s if self.c == 1 else f"({s})/{self.c}"


def _log_sum(a: int, b: int, d: int) -> float:
    """log(a + b*sqrt(d)) for a, b >= 0 without overflowing floats."""
    if a == 0:
        return math.log(b) + 0.5 * math.log(d)
    if b == 0:
        return math.log(a)
    big = max(a * a, b * b * d)
    lead = 0.5 * math.log(big)
    ratio = math.sqrt(Fraction(min(a * a, b * b * d), big))
    return lead + math.log1p(ratio)


# ---------------------------------------------------------------------------
# binary quadratic forms / ideals


@dataclass(frozen=True)
class BQForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1

    def is_ambiguous(self) -> bool:
        return self.b == 0 or self.a == self.b or self.a == self.c

    def __iter__(self):
        yield from (self.a, self.b, self.c)


def _form(a: int, b: int, D: int) -> BQForm:
    num = b * b - D
    assert num % (4 * a) == 0, (a, b, D)
    return BQForm(a, b, num // (4 * a))


def _normalize_b(a: int, b: int, D: int) -> int:
    """Move b within its class mod 2a into the normalized range."""
    if D < 0 or a * a > D:
        # -a < b <= a
        return ((b + a - 1) % (2 * a)) - a + 1
    r = math.isqrt(D)
    # largest b' <= r with b' == b mod 2a
    return r - ((r - b) % (2 * a))


def is_reduced(f: BQForm, D: int) -> bool:
    a, b, c = f
    if D < 0:
        return abs(b) <= a <= c and not (b < 0 and (abs(b) == a or a == c))
    if not (0 < b and b * b < D):
        return False
    return D < (2 * a + b) ** 2 and (2 * a - b < 0 or (2 * a - b) ** 2 < D)


def _beta(b: int, field: QuadField) -> QuadElement:
    """(-b + sqrt(D))/2 expressed in terms of sqrt(d)."""
    if field.disc == field.d:
        return QuadElement.make(-b, 1, 2, field.d)
    return QuadElement.make(Fraction(-b, 2), 1, 1, field.d)


def rho(f: BQForm, field: QuadField) -> tuple[BQForm, QuadElement]:
    """One reduction step on the ideal of f: returns (J, g) with I = g * J."""
    D = field.disc
    g = _beta(f.b, field) / f.c
    a = abs(f.c)
    return _form(a, _normalize_b(a, -f.b, D), D), g


def reduce_ideal(f: BQForm, field: QuadField) -> tuple[BQForm, QuadElement]:
    """Reduce the ideal of f; returns (J, g) with ideal(f) = g * ideal(J), J reduced."""
    D = field.disc
    g = field.one()
    f = _form(f.a, _normalize_b(f.a, f.b, D), D)
    while True:
        if D < 0:
            if f.a < f.c or (f.a == f.c and f.b >= 0):
                return f, g
        elif is_reduced(f, D):
            return f, g
        f, step = rho(f, field)
        g = g * step


def _cycle(f: BQForm, field: QuadField) -> Iterator[tuple[BQForm, QuadElement]]:
    """Walk the rho-cycle of a reduced indefinite ideal, yielding (J, g) with I = g*J."""
    g = field.one()
    start = f
    while True:
        yield f, g
        f, step = rho(f, field)
        g = g * step
        if f == start:
            return


def canonical_class(f: BQForm, field: QuadField) -> BQForm:
    """Canonical reduced representative of the ideal class of f."""
    return _canonical(f.a, f.b, field.d)


@lru_cache(maxsize=200_000)
def _canonical(a: int, b: int, d: int) -> BQForm:
    field = QuadField(d)
    r, _ = reduce_ideal(_form(a, b, field.disc), field)
    if field.disc < 0:
        return r
    return min((j for j, _ in _cycle(r, field)), key=lambda j: (j.a, j.b))


def compose(f1: BQForm, f2: BQForm) -> tuple[int, BQForm]:
    """Product of the ideals of f1 and f2 (same discriminant, a > 0).

    Returns ``(n, f3)`` with ``I1 * I2 = n * I3``; f3 is not reduced.
    """
    D = f1.disc
    if f2.disc != D:
        raise FieldMismatch("forms of different discriminants")
    if f1.a > f2.a:
        f1, f2 = f2, f1
    a1, b1, _ = f1
    a2, b2, c2 = f2
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, y2 = _xgcd(s, d)
        y2 = -y2
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    return d1, _form(a3, _normalize_b(a3, b3, D), D)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with u*a + v*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def ideal_contains(f: BQForm, x: QuadElement, field: QuadField) -> bool:
    """Membership of x in the ideal [a, (-b + sqrt(D))/2]."""
    # x = m*a + n*beta with m, n integers
    n = Fraction(x.b, x.c) / _beta(f.b, field).coords()[1]
    if n.denominator != 1:
        return False
    m = (Fraction(x.a, x.c) - n * _beta(f.b, field).coords()[0]) / f.a
    return m.denominator == 1


def principal_generator(f: BQForm, field: QuadField) -> QuadElement | None:
    """A generator of the ideal of f, or None if the ideal is not principal."""
    r, g = reduce_ideal(f, field)
    if field.disc < 0:
        return g if r.a == 1 else None
    for j, h in _cycle(r, field):
        if j.a == 1:
            return g * h
    return None


def identity_form(field: QuadField) -> BQForm:
    D = field.disc
    return _form(1, D % 2, D)


def class_mul(f1: BQForm, f2: BQForm, field: QuadField) -> BQForm:
    return canonical_class(compose(f1, f2)[1], field)


def class_pow(f: BQForm, n: int, field: QuadField) -> BQForm:
    if n < 0:
        f = BQForm(f.a, -f.b, f.c)
        n = -n
    result, base = identity_form(field), f
    while n:
        if n & 1:
            result = class_mul(result, base, field)
        n >>= 1
        if n:
            base = class_mul(base, base, field)
    return canonical_class(result, field)


# ---------------------------------------------------------------------------
# class group


@dataclass(frozen=True)
class QuadClassGroup:
    disc: int
    reps: tuple[BQForm, ...]

    @property
    def order(self) -> int:
        return len(self.reps)

    @property
    def field(self) -> QuadField:
        D = self.disc
        return QuadField(D if D % 4 == 1 else D // 4)

    @property
    def identity(self) -> BQForm:
        return canonical_class(identity_form(self.field), self.field)

    def mul(self, x: BQForm, y: BQForm) -> BQForm:
        return class_mul(x, y, self.field)

    @cached_property
    def two_torsion_rank(self) -> int:
        return two_torsion_count(self).bit_length() - 1


def reduced_forms(D: int) -> list[BQForm]:
    """All reduced ideals (a > 0) of discriminant D, sorted."""
    out = []
    if D < 0:
        amax = math.isqrt(-D // 3)
        for a in range(1, amax + 1):
            for b in range(-a + 1, a + 1):
                if (b - D) % 2 or (b * b - D) % (4 * a):
                    continue
                c = (b * b - D) // (4 * a)
                f = BQForm(a, b, c)
                if c >= a and is_reduced(f, D) and f.is_primitive():
                    out.append(f)
    else:
        r = math.isqrt(D)
        for b in range(1, r + 1):
            if (b - D) % 2:
                continue
            m = (D - b * b) // 4
            for a in range(max(1, (r - b) // 2), (r + b) // 2 + 2):
                if m % a:
                    continue
                f = BQForm(a, b, -(m // a))
                if is_reduced(f, D) and f.is_primitive():
                    out.append(f)
    return sorted(out, key=lambda f: (f.a, f.b))


def class_group(field: QuadField, bound: int = CLASS_GROUP_DISC_BOUND) -> QuadClassGroup:
    D = field.disc
    if abs(D) > bound:
        raise DiscriminantTooLarge(f"|disc| = {abs(D)} exceeds {bound}")
    return _class_group(D)


@lru_cache(maxsize=512)
def _class_group(D: int) -> QuadClassGroup:
    forms = reduced_forms(D)
    if D < 0:
        return QuadClassGroup(D, tuple(forms))
    field = QuadField(D if D % 4 == 1 else D // 4)
    reps = sorted({canonical_class(f, field) for f in forms}, key=lambda f: (f.a, f.b))
    return QuadClassGroup(D, tuple(reps))


def two_torsion_count(cg: QuadClassGroup) -> int:
    e = cg.identity
    return sum(1 for f in cg.reps if cg.mul(f, f) == e)


def genus_two_torsion(D: int) -> int:
    """2^(t-1), t the number of prime divisors of the fundamental discriminant D."""
    return 2 ** (len(factorint(D)) - 1)


# ---------------------------------------------------------------------------
# units


@lru_cache(maxsize=4096)
def fundamental_unit(field: QuadField) -> QuadElement:
    """Smallest unit > 1 of the maximal order, from the continued fraction of omega."""
    d = field.d
    if d < 2:
        raise ValueError("fundamental_unit needs d > 1")
    P0, Q0 = (1, 2) if d % 4 == 1 else (0, 1)
    r = math.isqrt(d)
    P, Q = P0, Q0
    A0, A1, B0, B1 = 0, 1, 1, 0  # A_{-2}, A_{-1}, B_{-2}, B_{-1}
    target = Q0 * Q0
    while True:
        a = (P + r) // Q if Q > 0 else (-P - r - 1) // (-Q)
        A0, A1 = A1, a * A1 + A0
        B0, B1 = B1, a * B1 + B0
        x = Q0 * A1 - B1 * P0
        if abs(x * x - d * B1 * B1) == target:
            eps = QuadElement.make(x, B1, Q0, d)
            return eps if float(eps) > 1 else eps.inverse()
        P = a * Q - P
        Q = (d - P * P) // Q


def torsion_generator(field: QuadField) -> tuple[QuadElement, int]:
    """(w, n): a generator of the roots of unity and its order."""
    if field.d == -1:
        return QuadElement(0, 1, 1, -1), 4
    if field.d == -3:
        return QuadElement(1, 1, 2, -3), 6
    return QuadElement(-1, 0, 1, field.d), 2


def is_torsion(x: QuadElement) -> bool:
    _, n = torsion_generator(QuadField(x.d))
    return x ** n == QuadElement(1, 0, 1, x.d)


# ---------------------------------------------------------------------------
# primes


def kronecker(D: int, p: int) -> int:
    """Kronecker symbol (D | p) for a prime p."""
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    t = pow(D % p, (p - 1) // 2, p)
    return 0 if t == 0 else (1 if t == 1 else -1)


def _sqrt_mod_prime(n: int, p: int) -> int:
    n %= p
    if p == 2 or n == 0:
        return n
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def padic_sqrt(d: int, p: int, N: int, congruent_to: int, modulus: int) -> int:
    """sqrt(d) in Z_p mod p^N, choosing the root == congruent_to mod modulus."""
    if p == 2:
        # d == 1 mod 8: lift bit by bit, keeping s odd
        M = 1 << max(N, 3)
        s = 1
        for k in range(4, max(N, 3) + 1):
            if (s * s - d) % (1 << k):
                s += 1 << (k - 2)
        roots = [s % M, (-s) % M]
    else:
        s = _sqrt_mod_prime(d, p)
        pk = p
        while pk < p**N:
            pk = min(pk * pk, p**N)
            s = (s - (s * s - d) * pow(2 * s, -1, pk)) % pk
        roots = [s, (-s) % (p**N)]
    for r in roots:
        if (r - congruent_to) % modulus == 0:
            return r
    raise ArithmeticError("no p-adic square root with the requested residue")


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime of Q(sqrt d) above p.

    ``form`` is the ideal [p, (-b + sqrt D)/2] for split/ramified primes; inert
    primes are (p) itself and carry ``form = None``.
    """

    p: int
    kind: str  # "split" | "inert" | "ramified"
    form: BQForm | None
    d: int

    def residue_root(self) -> tuple[int, int]:
        """(s0, m): the image of sqrt(d) in O/P is fixed by s == s0 mod m."""
        b = self.form.b
        if self.d % 4 == 1:
            return b, (4 if self.p == 2 else self.p)
        return (b // 2), self.p

    def valuation(self, x: QuadElement) -> int:
        if x.is_zero():
            raise ZeroInput("valuation of 0")
        p = self.p
        if self.kind != "split":
            v = valuation(x.norm(), p)
            return v // 2 if self.kind == "inert" else v
        A, B = x.a, x.b
        N = valuation(A * A - x.d * B * B, p) + 2
        s0, m = self.residue_root()
        s = padic_sqrt(x.d, p, N, s0, m)
        t = (A + B * s) % p**N
        v = 0
        while t % p == 0 and v < N:
            t //= p
            v += 1
        return v - valuation(x.c, p)


@dataclass(frozen=True)
class PrimeSplitting:
    kind: str
    primes: tuple[PrimeIdeal, ...]


def prime_splitting(field: QuadField, p: int) -> PrimeSplitting:
    D = field.disc
    k = kronecker(D, p)
    if k == -1:
        return PrimeSplitting("inert", (PrimeIdeal(p, "inert", None, field.d),))
    # b with b^2 == D mod 4p and b == D mod 2
    b = next(b for b in range(0, 2 * p) if (b - D) % 2 == 0 and (b * b - D) % (4 * p) == 0)
    if k == 0:
        return PrimeSplitting("ramified", (PrimeIdeal(p, "ramified", _form(p, b, D), field.d),))
    P = PrimeIdeal(p, "split", _form(p, _normalize_b(p, b, D), D), field.d)
    Pbar = PrimeIdeal(p, "split", _form(p, _normalize_b(p, -b, D), D), field.d)
    return PrimeSplitting("split", (P, Pbar))


def _conjugate_prime(P: PrimeIdeal, D: int) -> PrimeIdeal:
    if P.kind != "split":
        return P
    return PrimeIdeal(P.p, P.kind, _form(P.p, _normalize_b(P.p, -P.form.b, D), D), P.d)


# ---------------------------------------------------------------------------
# S-class groups and S-units


def s_class_group_two_torsion(field: QuadField, S: PrimeSet, bound: int = CLASS_GROUP_DISC_BOUND) -> int:
    """#(Cl / <primes above S>)[2] for the wide class group."""
    cg = class_group(field, bound)
    e = cg.identity
    H = {e}
    for p in S:
        for P in prime_splitting(field, p).primes:
            if P.form is None:
                continue
            x = canonical_class(P.form, field)
            frontier = list(H)
            while frontier:
                nxt = []
                for h in frontier:
                    y = cg.mul(h, x)
                    if y not in H:
                        H.add(y)
                        nxt.append(y)
                frontier = nxt
    count = sum(1 for g in cg.reps if cg.mul(g, g) in H)
    return count // len(H)


def _size_reduce(g: QuadElement, eps: QuadElement | None) -> QuadElement:
    """Normalize a generator up to units: balance |g| and |conj g|, then fix the sign."""
    if eps is not None:
        le = eps.log_abs()
        k = round((g.conj().log_abs() - g.log_abs()) / (2 * le))
        g = g * eps**k
        if float(g) < 0:
            g = -g
    else:
        w, n = torsion_generator(QuadField(g.d))
        g = max((g * w**j for j in range(n)), key=lambda h: (h.a, h.b))
    return g


class QuadSUnitBasis:
    """A Z-basis (modulo torsion) of the S-unit group of a quadratic field.

    ``generators`` = [torsion, fundamental unit (real only), pi_1, ..., pi_r];
    the pi_i generate the principal S-ideals, one per relation in the
    triangular basis ``relations`` of ker(Z^{primes above S} -> Cl).
    """

    def __init__(self, field: QuadField, S: PrimeSet):
        self.field = field
        self.S = S
        self.torsion, self.torsion_order = torsion_generator(field)
        self.unit = fundamental_unit(field) if field.is_real else None
        self.primes: list[PrimeIdeal] = [P for p in S for P in prime_splitting(field, p).primes]
        self.relations: list[tuple[int, ...]] = []
        self.pis: list[QuadElement] = []

        ident = canonical_class(identity_form(field), field)
        H: dict[BQForm, tuple[int, ...]] = {ident: ()}
        for i, P in enumerate(self.primes):
            if P.form is None:
                o, back = 1, tuple(0 for _ in range(i))
            else:
                x = canonical_class(P.form, field)
                y, o = x, 1
                while y not in H:
                    y = class_mul(y, x, field)
                    o += 1
                back = H[y]
            self.relations.append(tuple(-e for e in back) + (o,))
            if P.form is not None:
                powers = [ident]
                for _ in range(o - 1):
                    powers.append(class_mul(powers[-1], x, field))
                H = {class_mul(h, xp, field): vec + (j,) for h, vec in H.items() for j, xp in enumerate(powers)}
            else:
                H = {h: vec + (0,) for h, vec in H.items()}
        for rel in self.relations:
            rel = rel + (0,) * (len(self.primes) - len(rel))
            self.pis.append(_size_reduce(self._generator_of(rel), self.unit))
        self.relations = [r + (0,) * (len(self.primes) - len(r)) for r in self.relations]

    @property
    def generators(self) -> list[QuadElement]:
        return [self.torsion] + ([self.unit] if self.unit is not None else []) + list(self.pis)

    @property
    def rank(self) -> int:
        return (1 if self.unit is not None else 0) + len(self.pis)

    def _generator_of(self, exps: tuple[int, ...]) -> QuadElement:
        D = self.field.disc
        scalar = Fraction(1)
        form = identity_form(self.field)
        for P, e in zip(self.primes, exps):
            if e == 0:
                continue
            if P.kind == "inert":
                scalar *= Fraction(P.p) ** e
                continue
            Q = P
            if e < 0:
                scalar /= Fraction(P.p) ** (-e)
                Q = _conjugate_prime(P, D)
                e = -e
            for _ in range(e):
                n, form = compose(form, Q.form)
                scalar *= n
        g = principal_generator(form, self.field)
        if g is None:
            raise ArithmeticError("relation ideal is not principal")
        return g * scalar

    def valuations(self, x: QuadElement) -> tuple[int, ...]:
        return tuple(P.valuation(x) for P in self.primes)

    def coords(self, x: QuadElement) -> tuple[int, ...]:
        """Exponents of x on [unit?, pi_1..pi_r]; x must be an S-unit.

        The torsion part is dropped.  Every proposal from floating logs is
        verified exactly.
        """
        a = list(self.valuations(x))
        n = [0] * len(self.pis)
        for i in range(len(self.pis) - 1, -1, -1):
            rel = self.relations[i]
            if a[i] % rel[i]:
                raise ArithmeticError("valuation vector not in the principal lattice")
            n[i] = a[i] // rel[i]
            for j in range(i + 1):
                a[j] -= n[i] * rel[j]
        u = x
        for pi, e in zip(self.pis, n):
            if e:
                u = u / pi**e
        if self.unit is None:
            if not is_torsion(u):
                raise ArithmeticError("residual is not a root of unity")
            return tuple(n)
        k = round(u.log_abs() / self.unit.log_abs())
        r = u / self.unit**k
        if r.b != 0 or abs(r.a) != r.c:
            raise ArithmeticError("residual unit is not a power of the fundamental unit")
        return (k,) + tuple(n)

    def is_s_unit(self, x: QuadElement) -> bool:
        n = x.norm()
        if n == 0:
            return False
        smooth = lambda m: s_part_decompose(m, self.S)[2] == 1
        return smooth(x.trace().denominator) and smooth(n.numerator) and smooth(n.denominator)


@lru_cache(maxsize=4096)
def quad_s_unit_basis(field: QuadField, S: PrimeSet) -> QuadSUnitBasis:
    return QuadSUnitBasis(field, S)


def quad_s_unit_generators(field: QuadField, S: PrimeSet) -> list[QuadElement]:
    return quad_s_unit_basis(field, S).generators
