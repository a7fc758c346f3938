"""Walk one point of y^2 = x(x-1)(x-2)(x+1)(x+3) through the descent.

Run with ``python3 demos/running_curve.py``.
"""

from hyperdescent.arith import PrimeSet
from hyperdescent.descent import PAIRS, SIGNS, descend_point, recover_x, validate_curve
from hyperdescent.points import SearchBox, enumerate_points


def show(xs):
    return "(" + ", ".join(map(str, xs)) + ")"


S = PrimeSet((2, 3, 5))
curve = validate_curve([0, 6, -1, -7, 1, 1], S)
print("rational roots:", show(curve.rational_roots), " disc:", curve.disc)

points = enumerate_points(curve, SearchBox(10**4, 100, S))
print("S-integral points with |num| <= 10^4, den | 100:", ", ".join(show(p) for p in points))

rec = descend_point((3, 12), curve, triple=(0, 1, -1))
print("\ntriple", show(rec.tag.triple), "lambda", show(rec.lambdas), "mu", show(rec.mus))
print("gamma (square classes):", [g.value for g in rec.tag.gammas])

for pair in PAIRS:
    for s in SIGNS:
        key = (pair, s)
        print(f"  pair {pair} sign {s:+d}: factor {rec.factors[key]}")
        print(f"      v = {rec.vs[key]}   zeta = {rec.zetas[key]}")

print("\nThue equations A X^3 - s B Y^3 = 1:")
for t in rec.thue:
    print(f"  A={t.A}  B={t.B}  s={t.sign:+d}  lhs={t.lhs()}  holds={t.holds()}")

print("\nrecovered x from tag and (X+, X-):", sorted(map(str, recover_x(rec.tag, *rec.X, S))))
print("tag for (3, -12) equals tag for (3, 12):", descend_point((3, -12), curve, (0, 1, -1)).tag == rec.tag)
