"""Independent brute-force oracles for quadratic-field invariants."""

import math

import sympy

from hyperdescent.arith import is_squarefree
from hyperdescent.quadratic import QuadElement, QuadField, class_group, fundamental_unit


def fundamental_discriminants(lo, hi):
    out = []
    for D in range(lo, hi + 1):
        if D in (0, 1):
            continue
        if D % 4 == 1 and is_squarefree(D):
            out.append(D)
        elif D % 4 == 0 and D // 4 % 4 in (2, 3) and is_squarefree(D // 4):
            out.append(D)
    return out


def field_of(D):
    return QuadField(D if D % 4 == 1 else D // 4)


def orbit_class_number(D):
    """Count SL2(Z)-orbits of primitive positive definite forms via union-find.

    Forms are restricted to a box holding every reduced form; reduction
    toward a reduced form never leaves the box, so orbits stay connected.
    """
    N = (1 - D) // 4 + 1
    forms = []
    for a in range(1, N + 1):
        for c in range(1, N + 1):
            m = D + 4 * a * c
            if m < 0:
                continue
            b = math.isqrt(m)
            if b * b != m:
                continue
            for bb in {b, -b}:
                if math.gcd(math.gcd(a, bb), c) == 1:
                    forms.append((a, bb, c))
    index = {f: i for i, f in enumerate(forms)}
    parent = list(range(len(forms)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for f in forms:
        a, b, c = f
        for g in ((c, -b, a), (a, b + 2 * a, a + b + c), (a, b - 2 * a, a - b + c)):
            if g in index:
                parent[find(index[f])] = find(index[g])
    return len({find(i) for i in range(len(forms))})


def kronecker_symbol(D, n):
    """(D / n) for n >= 1, multiplicatively from sympy's Legendre symbol."""
    out = 1
    for p, e in sympy.factorint(n).items():
        if p == 2:
            chi = 0 if D % 2 == 0 else (1 if D % 8 in (1, 7) else -1)
        else:
            chi = 0 if D % p == 0 else sympy.legendre_symbol(D % p, p)
        out *= chi**e
    return out


def analytic_class_number(D):
    """h * log(eps) = -1/2 * sum_{a<D} chi(a) log sin(pi a / D) for D > 0."""
    s = sum(kronecker_symbol(D, a) * math.log(math.sin(math.pi * a / D)) for a in range(1, D) if math.gcd(a, D) == 1)
    eps = fundamental_unit(field_of(D))
    return -0.5 * s / eps.log_abs()


def pell_unit(d):
    """Smallest (x + y sqrt d)/k > 1 with norm +-1, by brute force over y."""
    k = 2 if d % 4 == 1 else 1
    y = 1
    while True:
        for t in (-1, 1):
            n = d * y * y + t * k * k
            x = math.isqrt(n)
            if x * x == n:
                return QuadElement.make(x, y, k, d)
        y += 1


def ambiguous_count(D):
    """Reduced definite forms (a, b, c) with b = 0, b = a or a = c."""
    n = 0
    for f in class_group(QuadField(D if D % 4 == 1 else D // 4)).reps:
        if f.b == 0 or f.b == f.a or f.a == f.c:
            n += 1
    return n
