from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from supercong.arith import decompose, reduce
from supercong.binomial import (
    FAMILY_PARAM,
    Shape,
    SumSpec,
    WeightKind,
    binom,
    central_form,
    central_sum,
    neg2_sum,
    pair_partial,
    pair_sum,
    signed_alt_sum,
)
from supercong.errors import DenominatorDivisibleByP
from supercong.polynomials import bernoulli_poly, bernoulli_poly_diff, euler_poly

F = Fraction
rationals = st.builds(Fraction, st.integers(-80, 80), st.integers(1, 30))


def falling_binom(a, k):
    """Oracle: product formula in one shot."""
    num = Fraction(1)
    for j in range(k):
        num *= a - j
    fact = 1
    for j in range(2, k + 1):
        fact *= j
    return num / fact


def test_binom_examples():
    assert binom(F(7, 3), 0) == 1
    assert binom(F(-1, 2), 2) == F(3, 8)
    assert binom(F(-1, 2), 2) ** 2 == F(comb(4, 2) ** 2, 16**2)
    assert binom(5, 7) == 0
    assert binom(5, 3) == comb(5, 3)


@settings(max_examples=80)
@given(rationals, st.integers(1, 30))
def test_pascal_and_product_formula(a, k):
    assert binom(a, k) == binom(a - 1, k) + binom(a - 1, k - 1)
    assert binom(a, k) == falling_binom(a, k)


@pytest.mark.parametrize("family", sorted(FAMILY_PARAM))
def test_central_forms_equal_binomial_pairs(family):
    a = FAMILY_PARAM[family]
    for k in range(51):
        assert central_form(family, k) == binom(a, k) * binom(-1 - a, k)


def test_central_form_examples():
    assert central_form(64, 1) == F(3, 16) == binom(F(-1, 4), 1) * binom(F(-3, 4), 1)
    assert all(central_form(f, 0) == 1 for f in FAMILY_PARAM)
    assert central_form(432, 2) == F(385, 5184)


def test_pair_sum_examples_at_p5():
    a = F(-1, 4)
    assert reduce(pair_sum(a, 5, WeightKind.ONE), 5, 2).value == 4
    assert reduce(pair_sum(a, 5, WeightKind.INV_2K_MINUS_1), 5, 2).value == 22
    assert reduce(pair_sum(a, 5, WeightKind.INV_K), 5, 2).value == 18
    assert pair_sum(a, 5, WeightKind.ONE) == central_sum(64, 5)


def test_weight_conventions():
    assert WeightKind.INV_K(0) is None
    assert WeightKind.INV_2K_MINUS_1(0) == -1
    assert pair_partial(F(2, 7), 0, WeightKind.INV_2K_MINUS_1) == -1
    assert pair_partial(F(2, 7), 0, WeightKind.INV_K) == 0


def test_signed_alt_examples():
    assert signed_alt_sum(0, 7) == 0
    assert signed_alt_sum(1, 7) == 1
    # both sides of the Bernoulli-difference formula at a = -1/4, p = 5, computed exactly
    a, p = F(-1, 4), 5
    d = decompose(a, p)
    rhs = (-bernoulli_poly_diff(8, -a) / 8 + 2 * bernoulli_poly_diff(4, -a) / 4
           - (a - d.frac) / 2 * bernoulli_poly(3, -a))
    assert reduce(signed_alt_sum(a, p), p, 2) == reduce(rhs, p, 2)


def test_neg2_examples():
    assert neg2_sum(0, 11) == 1
    assert neg2_sum(1, 11) == -1
    b, p = F(-1, 3), 7
    expected = 1 - 7 * F(-1, 3) * euler_poly(5, F(1, 3))
    assert reduce(neg2_sum(b, p), p, 2) == reduce(expected, p, 2)


def S(a, n):
    return pair_partial(a, n, WeightKind.INV_K)


def pair(a, n):
    return binom(a - 1, n) * binom(-a - 1, n)


@settings(max_examples=50, deadline=None)
@given(rationals.filter(bool), st.integers(1, 15))
def test_difference_recurrence(a, n):
    assert S(a, n) - S(a - 1, n) == F(2) / a * (pair(a, n) - 1)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 10), rationals, st.sampled_from([5, 7, 11, 13]), st.integers(1, 15))
def test_telescoped_recurrence(r_max, t, p, n):
    a = p * t + r_max
    rhs = sum(F(2) / (p * t + r) * (binom(p * t + r - 1, n) * binom(-p * t - r - 1, n) - 1)
              for r in range(1, r_max + 1))
    assert S(a, n) - S(p * t, n) == rhs


@settings(max_examples=50, deadline=None)
@given(rationals, st.integers(0, 15))
def test_quadratic_weight_identity(a, n):
    lhs = sum(binom(a, k) * binom(-1 - a, k) * ((2 * a * (a + 1) + 1) * k - a * (a + 1)) / (4 * k * k - 1)
              for k in range(n + 1))
    assert lhs == a * (a + n + 1) / (2 * n + 1) * binom(a - 1, n) * binom(-a - 1, n)


@settings(max_examples=50, deadline=None)
@given(rationals, st.integers(0, 15))
def test_linear_weight_identity(a, n):
    lhs = sum((k - a * (a + 1)) * binom(a, k) * binom(-1 - a, k) for k in range(n + 1))
    assert lhs == -a * (a + n + 1) * binom(a - 1, n) * binom(-1 - a, n)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_residue_path_matches_exact(data):
    p = data.draw(st.sampled_from([5, 7, 11, 13, 17]))
    a = data.draw(rationals.filter(lambda x: x.denominator % p))
    shape = data.draw(st.sampled_from([Shape.PAIR_HALF, Shape.PAIR_FULL, Shape.SIGNED_ALT, Shape.NEG2]))
    weight = data.draw(st.sampled_from(list(WeightKind)))
    scale = data.draw(st.sampled_from([F(1), 2 * a + 1, F(3, 2)]))
    k = data.draw(st.integers(1, 3))
    sumspec = SumSpec(shape, a, p, weight, scale)
    exact = sumspec.exact()
    if exact.denominator % p:
        assert sumspec.residue(k) == reduce(exact, p, k)
    else:
        with pytest.raises(DenominatorDivisibleByP):
            sumspec.residue(k)


def test_residue_path_refuses_non_integral_sum():
    # at a = -1/2 the k = (p-1)/2 term of sum C(a,k)C(-1-a,k)/(2k+1) has p in its denominator
    sumspec = SumSpec(Shape.PAIR_HALF, F(-1, 2), 7, WeightKind.INV_2K_PLUS_1)
    assert sumspec.exact().denominator % 7 == 0
    with pytest.raises(DenominatorDivisibleByP):
        sumspec.residue(2)
    # the (2a+1) factor repairs it
    assert SumSpec(Shape.PAIR_HALF, F(-1, 2), 7, WeightKind.INV_2K_PLUS_1, 0).residue(2).value == 0


def test_central_spec_rejects_unknown_family():
    with pytest.raises(ValueError):
        SumSpec(Shape.CENTRAL, F(1, 5), 7)
