"""Reproducible corpus of quintics with five rational roots."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .arith import PrimeSet, prime_divisors
from .descent import CurveData, validate_curve
from .poly import from_roots

ROOT_RANGE = (-10, 10)
MAX_S = 6


@dataclass(frozen=True)
class CorpusCurve:
    roots: tuple[int, ...]
    curve: CurveData


def curve_from_roots(roots) -> CurveData:
    roots = sorted(roots)
    f = from_roots(roots)
    disc = 1
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            disc *= (roots[i] - roots[j]) ** 2
    return validate_curve(f, PrimeSet(tuple(prime_divisors(disc))))


def generate_corpus(n: int, seed: int = 0, root_range=ROOT_RANGE, max_s: int = MAX_S) -> list[CorpusCurve]:
    """n distinct curves prod (x - r_i) with S the primes of the discriminant.

    Root tuples whose discriminant needs more than ``max_s`` primes are skipped.
    """
    rng = random.Random(seed)
    lo, hi = root_range
    seen, out = set(), []
    attempts = 0
    while len(out) < n:
        attempts += 1
        if attempts > 100 * n + 1000:
            raise RuntimeError("could not generate enough corpus curves")
        roots = tuple(sorted(rng.sample(range(lo, hi + 1), 5)))
        if roots in seen:
            continue
        seen.add(roots)
        curve = curve_from_roots(roots)
        if len(curve.S) > max_s:
            continue
        out.append(CorpusCurve(roots, curve))
    return out
