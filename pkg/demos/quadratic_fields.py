"""Class groups, fundamental units and S-units of a few quadratic fields.

Run with ``python3 demos/quadratic_fields.py``.
"""

from hyperdescent.arith import PrimeSet
from hyperdescent.quadratic import (
    QuadField,
    class_group,
    fundamental_unit,
    genus_two_torsion,
    prime_splitting,
    quad_s_unit_basis,
    s_class_group_two_torsion,
    two_torsion_count,
)

print("imaginary fields: class number and 2-torsion against genus theory")
for d in (-1, -5, -14, -23, -26, -34, -47, -71):
    k = QuadField(d)
    cg = class_group(k)
    print(f"  Q(sqrt {d:>3}): disc {k.disc:>5}  h = {cg.order:>2}  reduced forms {[tuple(f) for f in cg.reps]}")
    print(f"      #Cl[2] = {two_torsion_count(cg)}, genus count = {genus_two_torsion(k.disc)}")

print("\nreal fields: fundamental units from continued fractions")
for d in (2, 3, 6, 7, 13, 46, 94):
    eps = fundamental_unit(QuadField(d))
    print(f"  Q(sqrt {d}): eps = {eps}, norm {eps.norm()}")

k = QuadField(-34)
S = PrimeSet((2, 3, 17, 19, 43))
print("\nQ(sqrt -34), S =", list(S))
for p in S:
    sp = prime_splitting(k, p)
    print(f"  {p} is {sp.kind}; ideal forms {[tuple(P.form) for P in sp.primes if P.form is not None]}")
print("  S-unit generators:", quad_s_unit_basis(k, S).generators)
print("  #(Cl / <primes above S>)[2] =", s_class_group_two_torsion(k, S))
