import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperdescent.arith import PrimeSet
from hyperdescent.errors import FieldMismatch, NotAnSUnit
from hyperdescent.multiquad import (
    MQField,
    build_s_unit_basis,
    cube_class_decompose,
    embed,
    is_cube,
    mq_field_build,
    mq_mul,
    mq_norm,
    mq_sqrt,
    s_unit_test,
)

K23, _ = mq_field_build([2, 3])
S235 = PrimeSet((2, 3, 5))
s2, s3 = K23.sqrt_of(2), K23.sqrt_of(3)


def test_field_build_examples():
    F, exp = mq_field_build([3, 2])
    assert F.gens == (3, 2) and F.degree == 4
    F, exp = mq_field_build([3, 2, 1])
    assert F.gens == (3, 2) and exp[2] == (1, 0)
    F, exp = mq_field_build([2, 8])
    assert F.gens == (2,) and F.degree == 2 and exp[1] == (2, 1)
    F, exp = mq_field_build([6, 10, 15])
    assert F.degree == 4 and F.sqrt_of(15) * F.sqrt_of(15) == 15


def test_dependent_generators_rejected():
    with pytest.raises(ValueError):
        MQField((2, 3, 6))


def test_mul_examples():
    assert mq_mul(s3 + s2, s3 - s2) == 1
    assert (s3 + s2) ** 2 == 5 + 2 * K23.sqrt_of(6)
    assert mq_mul(5 + 2 * K23.sqrt_of(6), s3 - s2) == s3 + s2


def test_norm_examples():
    assert mq_norm(s3 + s2) == 1
    assert mq_norm(s2 + 2) == 4
    assert mq_norm(K23.one()) == 1
    n = mq_norm(s3 + s2, 3)  # to Q(sqrt 6): conjugates fixing sqrt 6
    assert n.d == 6


def test_s_unit_examples():
    assert s_unit_test(s3 + s2, S235)
    assert not s_unit_test(s2 + 2, PrimeSet((3,)))
    assert s_unit_test(s2 + 2, PrimeSet((2,)))


def test_field_mismatch():
    F, _ = mq_field_build([5])
    with pytest.raises(FieldMismatch):
        F.one() + K23.one()


def test_basis_examples():
    b = build_s_unit_basis(K23, PrimeSet(()))
    gens = b.generators
    assert gens[0] == -1
    assert set(map(repr, gens[1:])) == set(map(repr, [2 + s3, 1 + s2, 5 + 2 * K23.sqrt_of(6)]))
    F2, _ = mq_field_build([2])
    gens = build_s_unit_basis(F2, PrimeSet((2,))).generators
    assert gens[0] == -1 and set(map(repr, gens[1:])) == {repr(1 + F2.sqrt_of(2)), repr(F2.sqrt_of(2))}
    Q, _ = mq_field_build([])
    assert build_s_unit_basis(Q, S235).generators == [-1, 2, 3, 5]


def test_cube_class_examples():
    Q, _ = mq_field_build([])
    assert cube_class_decompose(Q.rational(8), build_s_unit_basis(Q, PrimeSet((2,)))) == (1, 2)
    assert cube_class_decompose(Q.rational(12), build_s_unit_basis(Q, PrimeSet((2, 3)))) == (12, 1)
    v, z = cube_class_decompose(s3 + s2, build_s_unit_basis(K23, PrimeSet(())))
    assert v == (5 + 2 * K23.sqrt_of(6)) ** 2 and z == s3 - s2


def test_cube_class_rejects_non_units():
    with pytest.raises(NotAnSUnit):
        cube_class_decompose(s2 + 2, build_s_unit_basis(K23, PrimeSet((3,))))


@pytest.mark.parametrize(
    "gens, order",
    [((2, 3), 2), ((-1,), 4), ((-3,), 6), ((-1, 2), 8), ((-1, 3), 12), ((-1, 2, 3), 24), ((-2, 5), 2)],
)
def test_torsion_orders(gens, order):
    F = MQField(gens)
    w, n = F.torsion
    assert n == order
    assert w**n == 1 and all(w ** (n // p) != 1 for p in (2, 3) if n % p == 0)


def test_rank_matches_dirichlet():
    # Q(sqrt2, sqrt3), S={2,3,5}: 3 units + primes above 2, 3, 5 (1 + 1 + 2)
    assert build_s_unit_basis(K23, S235).rank == 7
    # imaginary biquadratic Q(i, sqrt 2), S = {}: unit rank 1
    assert build_s_unit_basis(MQField((-1, 2)), PrimeSet(())).rank == 1


# --- properties ----------------------------------------------------------------

FIELDS = [K23, MQField((-1,)), MQField((-3, 2)), MQField((-1, 2, 3)), MQField((5, -7, 2))]
coords = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=6), min_size=8, max_size=8)


def element(F, cs):
    return F.element(cs[: F.degree])


@given(st.sampled_from(FIELDS), coords, coords)
@settings(max_examples=80, deadline=None)
def test_norm_multiplicative(F, a, b):
    x, y = element(F, a), element(F, b)
    assert (x * y).norm() == x.norm() * y.norm()


@given(st.sampled_from(FIELDS), coords)
@settings(max_examples=80, deadline=None)
def test_conjugate_product_is_norm(F, a):
    x = element(F, a)
    prod = F.one()
    for s in range(F.degree):
        prod = prod * x.conj(s)
    assert prod.is_rational() and prod == x.norm()


@given(st.sampled_from(FIELDS), coords)
@settings(max_examples=80, deadline=None)
def test_inverse_and_sqrt(F, a):
    x = element(F, a)
    if x.is_zero():
        return
    assert x * x.inverse() == 1
    r = mq_sqrt(x * x)
    assert r is not None and (r == x or r == -x)


@given(st.sampled_from(FIELDS), coords)
@settings(max_examples=40, deadline=None)
def test_embedding_is_a_homomorphism(F, a):
    G = MQField(F.gens + (11,)) if F.t < 3 else F
    x = element(F, a)
    assert embed(x * x, G) == embed(x, G) * embed(x, G)


def random_s_unit(basis, rng, spread=3):
    x = basis.torsion ** rng.randrange(basis.torsion_order)
    for w in basis.basis:
        x = x * w ** rng.randint(-spread, spread)
    return x


@pytest.mark.parametrize("gens, S", [((2, 3), (2, 3, 5)), ((-3, 2), (2, 3)), ((-1, 5), (2,)), ((3, 2, 5), (2,))])
def test_cube_class_invariance(gens, S):
    rng = random.Random(hash(gens) & 0xFFFF)
    basis = build_s_unit_basis(MQField(gens), PrimeSet(S))
    for _ in range(10):
        x = random_s_unit(basis, rng)
        u = random_s_unit(basis, rng, 1)
        v, z = cube_class_decompose(x, basis)
        assert v * z**3 == x
        assert cube_class_decompose(x * u**3, basis)[0] == v
        assert is_cube(x**3, basis)


@given(st.lists(st.integers(-2, 2), min_size=8, max_size=8), st.lists(st.integers(-2, 2), min_size=8, max_size=8))
@settings(max_examples=30, deadline=None)
def test_s_unit_products(ea, eb):
    basis = build_s_unit_basis(K23, S235)
    x, y = basis.product(ea[: basis.rank]), basis.product(eb[: basis.rank])
    assert s_unit_test(x, S235) and s_unit_test(y, S235) and s_unit_test(x * y, S235)


def test_membership_exponent_is_small_two_power():
    basis = build_s_unit_basis(MQField((3, 2, 5)), PrimeSet((2, 3)))
    for x in basis.raw:
        m, _ = basis.exponents(x)
        assert m in (1, 2, 4)
    # sqrt(3) + sqrt(2) is not in V0 but its square is
    m, _ = build_s_unit_basis(K23, PrimeSet(())).exponents(s3 + s2)
    assert m == 2


def test_cube_class_count():
    basis = build_s_unit_basis(MQField((-3, 2)), PrimeSet(()))
    assert basis.cube_class_count == 3 ** (basis.rank + 1)
    assert build_s_unit_basis(K23, S235).cube_class_count == 3**7


def test_log_matrix_matches_norms():
    # sum of log|sigma(w)| over embeddings is log|N(w)|
    basis = build_s_unit_basis(K23, S235)
    assert len(basis.log_matrix) == basis.rank
    for w, row in zip(basis.basis, basis.log_matrix):
        assert len(row) == 4
        assert math.isclose(sum(row), math.log(abs(w.norm())), abs_tol=1e-9)
