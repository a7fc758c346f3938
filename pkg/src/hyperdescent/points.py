"""Brute-force enumeration of S-integral points of y^2 = f(x) in a box."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import PrimeSet


@dataclass(frozen=True)
class SearchBox:
    """x = a/b with |a| <= H and b <= B an S-smooth positive integer."""

    H: int
    B: int
    S: PrimeSet

    def __post_init__(self):
        if self.H < 0 or self.B < 1:
            raise ValueError("need H >= 0 and B >= 1")


def s_smooth_up_to(B: int, S: PrimeSet) -> list[int]:
    out = [1]
    for p in S:
        nxt = []
        for n in out:
            while n <= B:
                nxt.append(n)
                n *= p
        out = nxt
    return sorted(out)


def enumerate_points(curve, box: SearchBox) -> list[tuple[Fraction, Fraction]]:
    """All (x, y) in the box with y^2 = f(x), both signs of y, sorted by (x, y)."""
    f = [int(c) for c in curve.f]
    d = len(f) - 1
    pts = []
    for b in s_smooth_up_to(box.B, box.S):
        bp = [b**k for k in range(d + 1)]
        bd = bp[d]
        for a in range(-box.H, box.H + 1):
            if math.gcd(a, b) != 1:
                continue
            acc = f[d]
            for i in range(d - 1, -1, -1):
                acc = acc * a + f[i] * bp[d - i]
            # f(a/b) = acc / b^d
            if acc < 0:
                continue
            n = acc * bd
            r = math.isqrt(n)
            if r * r != n:
                continue
            x = Fraction(a, b)
            y = Fraction(r, bd)
            pts.append((x, y))
            if y:
                pts.append((x, -y))
    return sorted(pts)
