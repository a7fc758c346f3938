from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperdescent.arith import (
    PrimeSet,
    SquareClassQ,
    factorint,
    int_sqrt_exact,
    is_prime,
    is_s_unit,
    rational_sqrt_exact,
    s_part_decompose,
    square_class_decompose,
    squarefree_kernel,
    valuation,
)
from hyperdescent.errors import OddValuationOutsideS, ZeroInput

S235 = PrimeSet((2, 3, 5))

nonzero_int = st.integers(-(10**6), 10**6).filter(bool)
nonzero_rat = st.builds(Fraction, nonzero_int, st.integers(1, 10**6))
s_unit_rat = st.builds(
    lambda s, a, b, c: s * Fraction(2) ** a * Fraction(3) ** b * Fraction(5) ** c,
    st.sampled_from([1, -1]),
    st.integers(-6, 6),
    st.integers(-6, 6),
    st.integers(-6, 6),
)
# S-unit times an arbitrary rational square: the inputs square_class_decompose accepts
smooth_rat = st.builds(
    lambda q, u: q * u * u, s_unit_rat, st.builds(Fraction, st.integers(1, 500), st.integers(1, 500))
)


@pytest.mark.parametrize("n, r", [(0, 0), (144, 12), (120, None), (1, 1), (10**40, 10**20)])
def test_int_sqrt_exact(n, r):
    assert int_sqrt_exact(n) == r


@pytest.mark.parametrize("q, p, v", [(Fraction(45, 32), 2, -5), (Fraction(45, 32), 3, 2), (7, 5, 0)])
def test_valuation_examples(q, p, v):
    assert valuation(q, p) == v


def test_valuation_of_zero():
    with pytest.raises(ZeroInput):
        valuation(0, 2)


def test_s_part_examples():
    assert s_part_decompose(1440, S235) == (1, {2: 5, 3: 2, 5: 1}, 1)
    assert s_part_decompose(7, S235) == (1, {2: 0, 3: 0, 5: 0}, 7)
    sign, exps, cof = s_part_decompose(-8, PrimeSet((2,)))
    assert (sign, exps[2], cof) == (-1, 3, 1)
    with pytest.raises(ZeroInput):
        s_part_decompose(0, S235)


@pytest.mark.parametrize(
    "q, gamma, eta",
    [(4, 1, 2), (6, 6, 1), (Fraction(45, 32), 10, Fraction(3, 8)), (-12, -3, 2)],
)
def test_square_class_examples(q, gamma, eta):
    g, e = square_class_decompose(q, S235)
    assert (g.value, e) == (gamma, eta)


def test_odd_valuation_outside_s():
    with pytest.raises(OddValuationOutsideS) as info:
        square_class_decompose(7, S235)
    assert info.value.p == 7


def test_prime_set_validation():
    with pytest.raises(ValueError):
        PrimeSet((2, 4))
    with pytest.raises(ValueError):
        PrimeSet((3, 2))
    assert 5 in S235 and 7 not in S235
    assert list(S235) == [2, 3, 5]


@given(st.integers(2, 10**5))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


@given(st.integers(1, 10**12))
@settings(max_examples=50)
def test_factorint_matches_sympy(n):
    assert factorint(n) == sympy.factorint(n)


def test_factorint_large_semiprime():
    p, q = 1000000007, 998244353
    assert factorint(p * q) == {q: 1, p: 1}


@given(nonzero_int)
def test_kernel_is_square_class(n):
    k = squarefree_kernel(n)
    assert rational_sqrt_exact(Fraction(n, k)) is not None
    assert sympy.factorint(abs(k)) == {p: 1 for p in sympy.factorint(abs(k))}


@given(smooth_rat)
def test_square_class_round_trip(q):
    g, e = square_class_decompose(q, S235)
    assert g.value * e * e == q and e > 0
    assert square_class_decompose(g.value, S235) == (g, 1)


@given(smooth_rat, smooth_rat)
def test_square_class_multiplicative(a, b):
    ga, _ = square_class_decompose(a, S235)
    gb, _ = square_class_decompose(b, S235)
    gab, _ = square_class_decompose(a * b, S235)
    assert ga * gb == gab


@given(nonzero_rat, nonzero_rat, st.sampled_from([2, 3, 5, 7, 11]))
def test_valuation_additive(a, b, p):
    assert valuation(a * b, p) == valuation(a, p) + valuation(b, p)


@given(s_unit_rat)
def test_s_unit_membership(q):
    assert is_s_unit(q, S235)
    assert not is_s_unit(q * 7, S235)


def test_square_class_structural_equality():
    assert SquareClassQ.from_int(-30) == SquareClassQ.from_int(-30)
    assert SquareClassQ.from_int(6).value == 6
