import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperdescent.arith import PrimeSet, is_squarefree, valuation
from hyperdescent.errors import DiscriminantTooLarge
from hyperdescent.quadratic import (
    BQForm,
    QuadElement,
    QuadField,
    class_group,
    fundamental_unit,
    genus_two_torsion,
    kronecker,
    prime_splitting,
    quad_s_unit_basis,
    quad_s_unit_generators,
    s_class_group_two_torsion,
    torsion_generator,
    two_torsion_count,
)
from oracles import (
    ambiguous_count,
    analytic_class_number,
    field_of,
    fundamental_discriminants,
    kronecker_symbol,
    orbit_class_number,
    pell_unit,
)

# --- examples --------------------------------------------------------------


def test_class_group_examples():
    cg = class_group(QuadField(-23))
    assert cg.order == 3
    assert set(cg.reps) == {BQForm(1, 1, 6), BQForm(2, 1, 3), BQForm(2, -1, 3)}
    cg15 = class_group(QuadField(-15))
    assert (cg15.order, cg15.two_torsion_rank) == (2, 1)
    assert class_group(QuadField(-1)).order == 1


@pytest.mark.parametrize("d, t", [(-15, 2), (-23, 1), (-1, 1)])
def test_two_torsion_count(d, t):
    assert two_torsion_count(class_group(QuadField(d))) == t


@pytest.mark.parametrize(
    "d, unit",
    [(2, (1, 1, 1)), (3, (2, 1, 1)), (5, (1, 1, 2)), (6, (5, 2, 1)), (7, (8, 3, 1)), (10, (3, 1, 1))],
)
def test_fundamental_unit_examples(d, unit):
    eps = fundamental_unit(QuadField(d))
    assert (eps.a, eps.b, eps.c) == unit
    assert abs(eps.norm()) == 1


@pytest.mark.parametrize("p, kind", [(7, "split"), (5, "inert"), (2, "ramified")])
def test_prime_splitting_examples(p, kind):
    assert prime_splitting(QuadField(2), p).kind == kind


def test_s_class_two_torsion_examples():
    assert s_class_group_two_torsion(QuadField(-15), PrimeSet(())) == 2
    assert s_class_group_two_torsion(QuadField(-15), PrimeSet((2,))) == 1
    assert s_class_group_two_torsion(QuadField(-23), PrimeSet((2, 3, 5))) == 1


def test_s_unit_generator_examples():
    gens = quad_s_unit_generators(QuadField(2), PrimeSet((2,)))
    k = QuadField(2)
    assert gens == [k.element(-1), k.element(1, 1), k.element(0, 1)]
    gens = quad_s_unit_generators(QuadField(6), PrimeSet((5,)))
    assert [abs(g.norm()) for g in gens] == [1, 1, 5, 5]


def test_discriminant_bound():
    with pytest.raises(DiscriminantTooLarge):
        class_group(QuadField(-(10**6) - 3), bound=10**5)


# --- oracle comparisons ------------------------------------------------------


@pytest.mark.parametrize("D", fundamental_discriminants(-200, -3))
def test_class_number_vs_orbits(D):
    assert class_group(field_of(D)).order == orbit_class_number(D)


@pytest.mark.parametrize("D", fundamental_discriminants(5, 400))
def test_real_class_number_vs_analytic_formula(D):
    assert class_group(field_of(D)).order == round(analytic_class_number(D))


@pytest.mark.parametrize("d", [2, 3, 5, 6, 7, 10, 11, 13, 14, 19, 21, 22, 29, 31, 43, 46, 61, 94])
def test_fundamental_unit_vs_pell(d):
    assert fundamental_unit(QuadField(d)) == pell_unit(d)


@pytest.mark.parametrize("D", fundamental_discriminants(-200, -3))
def test_genus_theory(D):
    cg = class_group(field_of(D))
    assert two_torsion_count(cg) == genus_two_torsion(D) == ambiguous_count(D)


@pytest.mark.parametrize("D", fundamental_discriminants(5, 300))
def test_genus_theory_real(D):
    # wide group: 2-torsion is 2^(t-1) or 2^(t-2) depending on the narrow/wide gap
    assert two_torsion_count(class_group(field_of(D))) in (genus_two_torsion(D), genus_two_torsion(D) // 2)


@pytest.mark.parametrize("D", fundamental_discriminants(-100, 200))
def test_group_closed_under_composition(D):
    cg = class_group(field_of(D))
    reps = set(cg.reps)
    for f in cg.reps:
        for g in cg.reps:
            assert cg.mul(f, g) in reps
        assert cg.mul(f, cg.identity) == f


@pytest.mark.parametrize("d", [-1, -3, -2, -7, 2, 5])
def test_torsion(d):
    w, n = torsion_generator(QuadField(d))
    assert n == {-1: 4, -3: 6}.get(d, 2)
    assert w**n == 1 and all(w**j != 1 for j in range(1, n))


# --- properties ---------------------------------------------------------------

squarefree_d = st.integers(-300, 300).filter(lambda d: d not in (0, 1) and is_squarefree(d))
small_primes = st.sampled_from([2, 3, 5, 7, 11, 13])


@given(squarefree_d, small_primes, st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 20))
@settings(max_examples=200, deadline=None)
def test_prime_valuations_sum_to_norm(d, p, a, b, c):
    x = QuadElement.make(a, b, c, d)
    if x.is_zero():
        return
    sp = prime_splitting(QuadField(d), p)
    f = 2 if sp.kind == "inert" else 1
    assert sum(f * P.valuation(x) for P in sp.primes) == valuation(x.norm(), p)


@given(squarefree_d, st.lists(small_primes, max_size=3, unique=True), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
@settings(max_examples=60, deadline=None)
def test_s_unit_coords_round_trip(d, S, exps):
    basis = quad_s_unit_basis(QuadField(d), PrimeSet(tuple(sorted(S))))
    gens = basis.generators[1:]
    x = basis.torsion
    for g, e in zip(gens, exps):
        x = x * g**e
    assert list(basis.coords(x)) == exps[: len(gens)]
    assert basis.is_s_unit(x)


@given(squarefree_d, st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_norm_multiplicative(d, a, b, c, e):
    x, y = QuadElement.make(a, b, 1, d), QuadElement.make(c, e, 1, d)
    assert (x * y).norm() == x.norm() * y.norm()


@pytest.mark.parametrize("D", fundamental_discriminants(-100, 100))
def test_kronecker_on_primes(D):
    for p in sympy.primerange(2, 60):
        assert kronecker(D, p) == kronecker_symbol(D, p)
