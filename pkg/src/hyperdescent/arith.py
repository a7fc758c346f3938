"""Exact integer and rational arithmetic over Q.

Rationals are plain :class:`fractions.Fraction` values (aliased ``SRational``);
the helpers here add the prime-set queries the descent needs: valuations,
S-smooth parts and the decomposition ``q = gamma * eta**2`` into a squarefree
S-supported class and a positive cofactor.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import OddValuationOutsideS, ZeroInput

SRational = Fraction

TRIAL_DIVISION_BOUND = 10_000

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorint(n: int, bound: int = TRIAL_DIVISION_BOUND) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{p: e}`` (empty for n = +-1)."""
    if n == 0:
        raise ZeroInput("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p, step = 7, 4
    while p <= bound and p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    if n == 1:
        return dict(sorted(out.items()))
    rng = random.Random(n)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _pollard_brent(m, rng)
        stack += [d, m // d]
    return dict(sorted(out.items()))


def prime_divisors(n: int) -> list[int]:
    return list(factorint(n))


def int_sqrt_exact(n: int) -> int | None:
    """Return ``r >= 0`` with ``r*r == n``, or ``None`` if n is not a square."""
    if n < 0:
        raise ValueError("negative input")
    r = math.isqrt(n)
    return r if r * r == n else None


def rational_sqrt_exact(q: Fraction) -> Fraction | None:
    q = Fraction(q)
    if q < 0:
        return None
    a = int_sqrt_exact(q.numerator)
    b = int_sqrt_exact(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def squarefree_kernel(n: int) -> int:
    """Signed squarefree part of a nonzero integer."""
    if n == 0:
        raise ZeroInput("0 has no squarefree kernel")
    k = -1 if n < 0 else 1
    for p, e in factorint(n).items():
        if e % 2:
            k *= p
    return k


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorint(n).values())


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(q, p: int) -> int:
    """Exponent of the prime p in the nonzero rational q."""
    q = Fraction(q)
    if q == 0:
        raise ZeroInput("valuation of 0")
    return _int_valuation(q.numerator, p) - _int_valuation(q.denominator, p)


@dataclass(frozen=True)
class PrimeSet:
    """The finite set S of rational primes, kept strictly ascending."""

    primes: tuple[int, ...] = ()

    def __post_init__(self):
        ps = tuple(int(p) for p in self.primes)
        for p in ps:
            if p < 2 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
                raise ValueError(f"{p} is not prime")
        if any(a >= b for a, b in zip(ps, ps[1:])):
            raise ValueError("primes must be strictly ascending")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def of(cls, primes: Iterable[int]) -> "PrimeSet":
        return cls(tuple(sorted(set(int(p) for p in primes))))

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)

    def __contains__(self, p):
        return p in self.primes

    def union(self, other: Iterable[int]) -> "PrimeSet":
        return PrimeSet.of(set(self.primes) | set(other))


def s_part_decompose(n: int, S: PrimeSet) -> tuple[int, dict[int, int], int]:
    """Split ``n = sign * prod(p**e_p) * cofactor`` with cofactor > 0 prime to S.

    Returns ``(sign, exps, cofactor)``; n is an S-unit iff ``cofactor == 1``.
    """
    if n == 0:
        raise ZeroInput("s_part_decompose(0)")
    sign = -1 if n < 0 else 1
    n = abs(n)
    exps = {}
    for p in S:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        exps[p] = e
    return sign, exps, n


def is_s_smooth(n: int, S: PrimeSet) -> bool:
    return s_part_decompose(n, S)[2] == 1


def is_s_integral(q, S: PrimeSet) -> bool:
    return is_s_smooth(Fraction(q).denominator, S)


def is_s_unit(q, S: PrimeSet) -> bool:
    q = Fraction(q)
    return q != 0 and is_s_smooth(q.numerator, S) and is_s_smooth(q.denominator, S)


@dataclass(frozen=True)
class SquareClassQ:
    """Canonical squarefree representative ``sign * prod(p**e_p)`` of a class in Q*/Q*^2."""

    sign: int
    exps: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +-1")
        exps = tuple(sorted((int(p), int(e) % 2) for p, e in dict(self.exps).items()))
        object.__setattr__(self, "exps", tuple((p, e) for p, e in exps if e))

    @property
    def value(self) -> int:
        v = self.sign
        for p, _ in self.exps:
            v *= p
        return v

    @classmethod
    def from_int(cls, n: int) -> "SquareClassQ":
        k = squarefree_kernel(n)
        return cls(1 if k > 0 else -1, tuple((p, 1) for p in factorint(k)))

    def __mul__(self, other: "SquareClassQ") -> "SquareClassQ":
        e = dict(self.exps)
        for p, x in other.exps:
            e[p] = (e.get(p, 0) + x) % 2
        return SquareClassQ(self.sign * other.sign, tuple(e.items()))

    def __int__(self):
        return self.value


def square_class_decompose(q, S: PrimeSet) -> tuple[SquareClassQ, Fraction]:
    """Write ``q = gamma * eta**2`` with gamma squarefree, S-supported, and eta > 0.

    Raises :class:`OddValuationOutsideS` naming the first prime outside S at
    which q has odd valuation.
    """
    q = Fraction(q)
    if q == 0:
        raise ZeroInput("square_class_decompose(0)")
    sign = -1 if q < 0 else 1
    exps = {}
    for n in (q.numerator, q.denominator):
        for p, e in factorint(n).items():
            if e % 2:
                if p not in S:
                    raise OddValuationOutsideS(p)
                exps[p] = 1
    gamma = SquareClassQ(sign, tuple(exps.items()))
    eta = rational_sqrt_exact(q / gamma.value)
    assert eta is not None
    return gamma, eta
