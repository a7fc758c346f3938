"""Dense univariate polynomials over Q, coefficients in ascending degree."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .arith import factorint

Poly = list  # ascending coefficients, trailing zeros stripped


def trim(f: Sequence) -> Poly:
    f = [Fraction(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: Sequence) -> int:
    return len(trim(f)) - 1


def evaluate(f: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def derivative(f: Sequence) -> Poly:
    return trim([i * c for i, c in enumerate(f)][1:])


def mul(f: Sequence, g: Sequence) -> Poly:
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return trim(out)


def divmod_poly(f: Sequence, g: Sequence) -> tuple[Poly, Poly]:
    f, g = trim(f), trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    while len(r) >= len(g):
        c = r[-1] / g[-1]
        k = len(r) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            r[i + k] -= c * b
        r = trim(r)
    return trim(q), r


def resultant(f: Sequence, g: Sequence) -> Fraction:
    f, g = trim(f), trim(g)
    if not f or not g:
        return Fraction(0)
    m, n = len(f) - 1, len(g) - 1
    if n == 0:
        return g[0] ** m
    r = divmod_poly(f, g)[1]
    if not r:
        return Fraction(0)
    k = len(r) - 1
    sign = -1 if (m * n) % 2 else 1
    return sign * g[-1] ** (m - k) * resultant(g, r)


def discriminant(f: Sequence) -> Fraction:
    f = trim(f)
    n = len(f) - 1
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, derivative(f)) / f[-1]


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorint(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def integer_roots(f: Sequence[int]) -> list[int]:
    """Distinct integer roots of a monic integer polynomial, ascending."""
    f = trim(f)
    roots = set()
    while f and f[0] == 0:
        roots.add(0)
        f = f[1:]
    if len(f) > 1:
        c = int(f[0])
        for d in _divisors(abs(c)):
            for r in (d, -d):
                if evaluate(f, r) == 0:
                    roots.add(r)
    return sorted(roots)


def from_roots(roots: Sequence[int]) -> list[int]:
    f = [Fraction(1)]
    for r in roots:
        f = mul(f, [-r, 1])
    return [int(c) for c in f]
