"""Multiquadratic fields Q(sqrt d_1, ..., sqrt d_t) and their S-unit groups.

Elements are stored on the basis ``b_T = prod_{i in T} sqrt(d_i)`` indexed by
bitmasks ``T``; ``b_T * b_U = b_{T ^ U} * prod_{i in T & U} d_i``.  The
automorphisms are the sign flips ``sqrt(d_i) -> -sqrt(d_i)``, also indexed by
bitmasks.

S-unit coordinates are exact.  An S-unit ``x`` is sent to the exponent vectors
of its norms to every quadratic subfield, each taken on the exact S-unit basis
of that subfield.  This map kills exactly the torsion, and since
``x^(2^(t-1)) = prod_k N_{M/k}(x) / N_{M/Q}(x)^(2^(t-1) - 1)`` the subgroup
generated by the subfield S-units has 2-power index, which is what makes the
cube-class representative below canonical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .arith import PrimeSet, factorint, is_s_integral, is_s_unit, rational_sqrt_exact, squarefree_kernel, valuation
from .errors import FieldMismatch, MembershipNotFound, NotAnSUnit, ZeroInput
from .intlattice import IntLattice
from .quadratic import QuadElement, QuadField, quad_s_unit_basis


def _class_vector(n: int, index: dict[int, int]) -> int:
    """Square class of a squarefree n as a bitmask over primes (bit 0 is the sign)."""
    bits = 1 if n < 0 else 0
    for p in factorint(n):
        if p not in index:
            index[p] = len(index) + 1
        bits |= 1 << index[p]
    return bits


class MQField:
    """Q(sqrt d_1, ..., sqrt d_t) for F_2-independent squarefree d_i."""

    def __init__(self, gens: Sequence[int]):
        self.gens = tuple(int(d) for d in gens)
        self.t = len(self.gens)
        if self.t > 3:
            raise ValueError("at most three generators are supported")
        self.degree = 1 << self.t
        self._index: dict[int, int] = {}
        vecs = [_class_vector(d, self._index) for d in self.gens]
        for d in self.gens:
            if d == 1 or squarefree_kernel(d) != d:
                raise ValueError(f"generator {d} is not a squarefree integer != 1")
        for T in range(1, self.degree):
            acc = 0
            for i in range(self.t):
                if T >> i & 1:
                    acc ^= vecs[i]
            if acc == 0:
                raise ValueError(f"generators {self.gens} are not independent modulo squares")
        self._vecs = vecs
        # factor[T & U] for basis multiplication
        self._factor = [math.prod(self.gens[i] for i in range(self.t) if T >> i & 1) for T in range(self.degree)]

    def __eq__(self, other):
        return isinstance(other, MQField) and self.gens == other.gens

    def __hash__(self):
        return hash(("MQField", self.gens))

    def __repr__(self):
        return f"MQField{self.gens}"

    # -- square classes ------------------------------------------------------

    def span_mask(self, n: int) -> int | None:
        """Mask T with prod_{i in T} d_i == n modulo squares, or None."""
        index = dict(self._index)
        target = _class_vector(squarefree_kernel(n), index)
        if len(index) != len(self._index):
            return None
        for T in range(self.degree):
            acc = 0
            for i in range(self.t):
                if T >> i & 1:
                    acc ^= self._vecs[i]
            if acc == target:
                return T
        return None

    def sqrt_expansion(self, n) -> tuple[Fraction, int] | None:
        """(r, T) with sqrt(n) = r * b_T, r > 0 rational; None if sqrt(n) is not in the field."""
        n = Fraction(n)
        if n == 0:
            raise ZeroInput("sqrt_expansion(0)")
        T = self.span_mask(n.numerator * n.denominator)
        if T is None:
            return None
        r = rational_sqrt_exact(n / self._factor[T])
        assert r is not None
        return r, T

    def sqrt_of(self, n) -> "MQElement":
        r, T = self.sqrt_expansion(n)
        return self.basis_element(T) * r

    # -- elements ------------------------------------------------------------

    def element(self, coords: Sequence) -> "MQElement":
        coords = [Fraction(c) for c in coords]
        if len(coords) != self.degree:
            raise ValueError("wrong number of coordinates")
        den = math.lcm(*(c.denominator for c in coords))
        return MQElement.make(self, [int(c * den) for c in coords], den)

    def rational(self, q) -> "MQElement":
        q = Fraction(q)
        return MQElement(self, (q.numerator,) + (0,) * (self.degree - 1), q.denominator)

    def one(self) -> "MQElement":
        return self.rational(1)

    def basis_element(self, T: int) -> "MQElement":
        nums = [0] * self.degree
        nums[T] = 1
        return MQElement(self, tuple(nums), 1)

    # -- subfields -----------------------------------------------------------

    @cached_property
    def quadratic_subfields(self) -> list[tuple[int, QuadField, Fraction]]:
        """[(T, Q(sqrt m), r)] with b_T = r * sqrt(m), m squarefree, for each T != 0."""
        out = []
        for T in range(1, self.degree):
            prod = self._factor[T]
            m = squarefree_kernel(prod)
            r = rational_sqrt_exact(Fraction(prod, m))
            out.append((T, QuadField(m), r))
        return out

    def fixing_group(self, T: int) -> list[int]:
        """Sign masks sigma with sigma(b_T) = b_T."""
        return [s for s in range(self.degree) if bin(s & T).count("1") % 2 == 0]

    # -- roots of unity ------------------------------------------------------

    @cached_property
    def torsion(self) -> tuple["MQElement", int]:
        """(generator, order) of the roots of unity in the field."""
        has_i = self.span_mask(-1) is not None
        has_2 = self.span_mask(2) is not None
        has_w = self.span_mask(-3) is not None
        if has_i and has_2:
            i = self.sqrt_of(-1)
            g, n = (self.one() + i) * self.sqrt_of(2) * Fraction(1, 2), 8
        elif has_i:
            g, n = self.sqrt_of(-1), 4
        else:
            g, n = self.rational(-1), 2
        if has_w:
            w = (self.sqrt_of(-3) - 1) * Fraction(1, 2)
            g = g * w
            n *= 3
        return g, n

    @cached_property
    def cube_roots_of_unity(self) -> list["MQElement"]:
        if self.span_mask(-3) is None:
            return [self.one()]
        w = (self.sqrt_of(-3) - 1) * Fraction(1, 2)
        return [self.one(), w, w * w]


@dataclass(frozen=True, eq=False)
class MQElement:
    """sum_T (nums[T] / den) * b_T; gcd(nums, den) = 1, den > 0."""

    field: MQField
    nums: tuple[int, ...]
    den: int

    @staticmethod
    def make(field: MQField, nums, den) -> "MQElement":
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            nums, den = [-a for a in nums], -den
        g = math.gcd(den, *nums)
        return MQElement(field, tuple(a // g for a in nums), den // g)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        return isinstance(other, MQElement) and self.field == other.field and self.nums == other.nums and self.den == other.den

    def __hash__(self):
        return hash((self.field.gens, self.nums, self.den))

    def _coerce(self, other) -> "MQElement":
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.den) for a in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.nums[0], self.den)

    def __add__(self, other):
        o = self._coerce(other)
        return MQElement.make(self.field, [a * o.den + b * self.den for a, b in zip(self.nums, o.nums)], self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return MQElement(self.field, tuple(-a for a in self.nums), self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        n = self.field.degree
        f = self.field._factor
        out = [0] * n
        for T, a in enumerate(self.nums):
            if a:
                for U, b in enumerate(o.nums):
                    if b:
                        out[T ^ U] += a * b * f[T & U]
        return MQElement.make(self.field, out, self.den * o.den)

    __rmul__ = __mul__

    def conj(self, sigma: int) -> "MQElement":
        """Image under the automorphism flipping sqrt(d_i) for each bit i of sigma."""
        nums = tuple(-a if bin(T & sigma).count("1") % 2 else a for T, a in enumerate(self.nums))
        return MQElement(self.field, nums, self.den)

    def inverse(self) -> "MQElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0")
        y, num = self, self.field.one()
        for i in range(self.field.t):
            c = y.conj(1 << i)
            num = num * c
            y = y * c
        return num * (1 / y.rational_value())

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def norm(self) -> Fraction:
        """N_{M/Q}(x)."""
        y = self
        for i in range(self.field.t):
            y = y * y.conj(1 << i)
        return y.rational_value()

    def norm_to(self, T: int) -> QuadElement:
        """N_{M/k}(x) for the quadratic subfield k = Q(b_T), as a QuadElement."""
        y = self.field.one()
        for s in self.field.fixing_group(T):
            y = y * self.conj(s)
        if any(a for U, a in enumerate(y.nums) if U not in (0, T)):
            raise ArithmeticError("relative norm did not land in the subfield")
        _, k, r = next(q for q in self.field.quadratic_subfields if q[0] == T)
        return QuadElement.make(y.nums[0], y.nums[T] * r, y.den, k.d)

    def charpoly(self) -> list[Fraction]:
        """Coefficients (ascending) of prod_sigma (X - sigma(x)) over Q."""
        poly = [self.field.one()]
        for s in range(self.field.degree):
            c = self.conj(s)
            new = [self.field.rational(0)] * (len(poly) + 1)
            for i, a in enumerate(poly):
                new[i + 1] = new[i + 1] + a
                new[i] = new[i] - a * c
            poly = new
        return [a.rational_value() for a in poly]

    def float_embeddings(self) -> list[complex]:
        """Values under every complex embedding (sign mask order), in floating point."""
        roots = [complex(d) ** 0.5 if d > 0 else 1j * math.sqrt(-d) for d in self.field.gens]
        out = []
        for s in range(self.field.degree):
            y = self.conj(s)
            v = 0j
            for T, a in enumerate(y.nums):
                if a:
                    v += float(Fraction(a, y.den)) * math.prod(roots[i] for i in range(self.field.t) if T >> i & 1)
            out.append(v)
        return out

    def __repr__(self):
        terms = []
        for T, c in enumerate(self.coords()):
            if c:
                sym = "*".join(f"sqrt({self.field.gens[i]})" for i in range(self.field.t) if T >> i & 1)
                terms.append(f"{c}" if not sym else f"{c}*{sym}")
        return " + ".join(terms) if terms else "0"


def embed(x: MQElement, target: MQField) -> MQElement:
    """Image of x under the embedding sending sqrt(d_i) to its expansion in target."""
    images = []
    for d in x.field.gens:
        e = target.sqrt_expansion(d)
        if e is None:
            raise FieldMismatch(f"sqrt({d}) is not in {target}")
        images.append(target.basis_element(e[1]) * e[0])
    out = target.rational(0)
    for T, c in enumerate(x.coords()):
        if c:
            term = target.rational(c)
            for i in range(x.field.t):
                if T >> i & 1:
                    term = term * images[i]
            out = out + term
    return out


def from_quad(z: QuadElement, field: MQField) -> MQElement:
    r, T = field.sqrt_expansion(z.d)
    a, b = z.coords()
    return field.rational(a) + field.basis_element(T) * (b * r)


def mq_field_build(values: Sequence) -> tuple[MQField, list[tuple[Fraction, int]]]:
    """Field generated by the square roots of the values, plus sqrt expansions.

    Squarefree kernels are taken in input order and dependent ones skipped.
    Returns ``(field, [(r_i, T_i)])`` with ``sqrt(values[i]) = r_i * b_{T_i}``.
    """
    gens: list[int] = []
    for v in values:
        v = Fraction(v)
        if v == 0:
            raise ZeroInput("mq_field_build needs nonzero values")
        k = squarefree_kernel(v.numerator * v.denominator)
        if k == 1:
            continue
        if MQField(gens).span_mask(k) is None:
            gens.append(k)
    field = MQField(gens)
    return field, [field.sqrt_expansion(v) for v in values]


def mq_mul(x: MQElement, y: MQElement) -> MQElement:
    return x * y


def mq_norm(x: MQElement, target: int | None = None):
    """Norm to Q (target None) or to the quadratic subfield Q(b_target)."""
    return x.norm() if target is None else x.norm_to(target)


def s_unit_test(x: MQElement, S: PrimeSet) -> bool:
    """x is a unit of O_{M,S}: S-integral characteristic polynomial and S-unit norm."""
    if x.is_zero():
        raise ZeroInput("s_unit_test(0)")
    cp = x.charpoly()
    return all(is_s_integral(c, S) for c in cp) and is_s_unit(cp[0], S)


def mq_sqrt(x: MQElement) -> MQElement | None:
    """An exact square root of x in its field, or None."""
    F = x.field
    if F.t == 0:
        r = rational_sqrt_exact(x.rational_value())
        return None if r is None else F.rational(r)
    if x.is_zero():
        return x
    sub = MQField(F.gens[:-1])
    half = sub.degree
    d = F.gens[-1]
    p = MQElement.make(sub, list(x.nums[:half]), x.den)
    q = MQElement.make(sub, list(x.nums[half:]), x.den)
    lift = lambda y: MQElement.make(F, list(y.nums) + [0] * half, y.den)
    top = F.basis_element(half)
    if q.is_zero():
        a = mq_sqrt(p)
        if a is not None:
            return lift(a)
        b = mq_sqrt(p * Fraction(1, d))
        return None if b is None else lift(b) * top
    s = mq_sqrt(p * p - q * q * d)
    if s is None:
        return None
    for sgn in (1, -1):
        a = mq_sqrt((p + s * sgn) * Fraction(1, 2))
        if a is None or a.is_zero():
            continue
        b = q / (a * 2)
        w = lift(a) + lift(b) * top
        if w * w == x:
            return w
    return None


# ---------------------------------------------------------------------------
# S-unit bases and cube classes


class SUnitBasis:
    """Exact Z-basis (modulo torsion) of the group V0 generated by the S-units
    of all quadratic subfields (all of O_{Q,S}^x when the field is Q).

    ``generators[0]`` is the torsion generator; ``generators[1:]`` are the
    basis elements ``w_i``.
    """

    def __init__(self, field: MQField, S: PrimeSet):
        self.field = field
        self.S = S
        self.torsion, self.torsion_order = field.torsion
        if field.t == 0:
            raw = [field.rational(p) for p in S]
        else:
            raw = []
            for T, k, r in field.quadratic_subfields:
                for g in quad_s_unit_basis(k, S).generators[1:]:
                    raw.append(from_quad(g, field))
        self.raw = raw
        self.lattice = IntLattice([self.phi(g) for g in raw]) if raw else IntLattice([])
        self.basis: list[MQElement] = []
        for comb in self.lattice.transform:
            w = field.one()
            for g, e in zip(raw, comb):
                if e:
                    w = w * g**e
            self.basis.append(w)

    @property
    def generators(self) -> list[MQElement]:
        return [self.torsion] + self.basis

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def cube_class_count(self) -> int:
        """Size of the canonical representative set (= #(V0 / V0^3))."""
        return 3 ** (self.rank + (1 if self.torsion_order % 3 == 0 else 0))

    def phi(self, x: MQElement) -> list[int]:
        """Exact coordinate vector; injective modulo torsion on S-units."""
        if self.field.t == 0:
            q = x.rational_value()
            return [valuation(q, p) for p in self.S]
        out: list[int] = []
        for T, k, _ in self.field.quadratic_subfields:
            out.extend(quad_s_unit_basis(k, self.S).coords(x.norm_to(T)))
        return out

    @cached_property
    def log_matrix(self) -> list[list[float]]:
        """log|sigma(w_i)| for each basis element and embedding (floating, informational)."""
        return [[math.log(abs(v)) for v in w.float_embeddings()] for w in self.basis]

    def product(self, exps: Sequence[int]) -> MQElement:
        out = self.field.one()
        for w, e in zip(self.basis, exps):
            if e:
                out = out * w**e
        return out

    def exponents(self, x: MQElement, max_power: int = 16) -> tuple[int, list[int]]:
        """(m, c): minimal 2-power m with x^m = torsion * prod w_i^c_i."""
        phi = self.phi(x)
        m = 1
        while m <= max_power:
            c = self.lattice.solve([m * a for a in phi])
            if c is not None:
                return m, c
            m *= 2
        raise MembershipNotFound(max_power)


@lru_cache(maxsize=1024)
def build_s_unit_basis(field: MQField, S: PrimeSet) -> SUnitBasis:
    return SUnitBasis(field, S)


def cube_class_decompose(x: MQElement, basis: SUnitBasis, check_s_unit: bool = True) -> tuple[MQElement, MQElement]:
    """Write x = v * zeta^3 with v a canonical representative of x's cube class.

    v = tors * prod w_i^{r_i} with r_i in {0,1,2} and tors in {1, w, w^2}
    (w a primitive cube root of unity, only when the field contains one).
    """
    if x.field != basis.field:
        raise FieldMismatch("element and basis live in different fields")
    if check_s_unit and not s_unit_test(x, basis.S):
        raise NotAnSUnit(f"{x} is not an S-unit for S = {list(basis.S)}")
    m, c = basis.exponents(x)
    m_inv = 1 if m % 3 == 1 else 2
    k = (m * m_inv - 1) // 3
    e = [ci * m_inv for ci in c]
    r = [ei % 3 for ei in e]
    q = [(ei - ri) // 3 for ei, ri in zip(e, r)]
    v = basis.product(r)
    zeta = basis.product(q) * x ** (-k)
    t = x / (v * zeta**3)
    n = basis.torsion_order
    if t ** n != 1:
        raise ArithmeticError("residual is not a root of unity")
    if n % 3:
        zeta = zeta * t ** pow(3, -1, n)
    else:
        n3 = n // 3
        for j, w in enumerate(basis.field.cube_roots_of_unity):
            s = t / w
            if s**n3 == 1:
                v = v * w
                zeta = zeta * s ** pow(3, -1, n3) if n3 > 1 else zeta
                break
        else:
            raise ArithmeticError("torsion residual has no cube-class representative")
    if v * zeta**3 != x:
        raise ArithmeticError("cube class decomposition failed to round-trip")
    return v, zeta


def is_cube(x: MQElement, basis: SUnitBasis) -> bool:
    v, _ = cube_class_decompose(x, basis, check_s_unit=False)
    return v == 1
