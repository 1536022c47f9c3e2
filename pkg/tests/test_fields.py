"""Coefficient field tests: exactness, normalization, axioms, derivation."""

import random
from fractions import Fraction

import pytest

from diffnull.fields import QQ, QX, RatFunc


def rand_ratfunc(rng):
    def rand_poly():
        return [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(1, 4))]

    while True:
        den = rand_poly()
        if any(den):
            return RatFunc(rand_poly(), den)


def test_normalization_reduced_and_monic():
    # (2x^2 + 2x) / (4x) reduces to (x+1)/2
    r = RatFunc([0, 2, 2], [0, 4])
    assert r.den == (Fraction(1),)
    assert r.num == (Fraction(1, 2), Fraction(1, 2))


def test_zero_and_constants():
    z = RatFunc([0], [1])
    assert not z
    assert z.is_constant() and z.constant_value() == 0
    assert QX.from_int(3).constant_value() == 3
    assert QQ.from_int(3) == Fraction(3)


def test_field_axioms_sampled():
    rng = random.Random(7)
    for _ in range(40):
        a, b, c = (rand_ratfunc(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == RatFunc.from_fraction(0)
        if a:
            assert a * (RatFunc.from_fraction(1) / a) == RatFunc.from_fraction(1)


def test_derivative_leibniz_sampled():
    rng = random.Random(11)
    for _ in range(30):
        a, b = rand_ratfunc(rng), rand_ratfunc(rng)
        assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


def test_derivative_of_constant_is_zero():
    assert not QX.from_fraction(Fraction(5, 3)).derivative()
    assert QQ.derivative(Fraction(5, 3)) == 0


def test_x_power_and_derivative():
    # d/dx (x^3 / 6) = x^2 / 2
    a = QX.x(3, Fraction(1, 6))
    assert a.derivative() == QX.x(2, Fraction(1, 2))
    # iterating: third derivative is 1
    d3 = a.derivative().derivative().derivative()
    assert d3 == RatFunc.from_fraction(1)


def test_quotient_rule_exact():
    # d/dx (1/x) = -1/x^2
    inv_x = RatFunc([1], [0, 1])
    assert inv_x.derivative() == RatFunc([-1], [0, 0, 1])


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        RatFunc([1], [0])
    with pytest.raises(ZeroDivisionError):
        RatFunc.from_fraction(1) / RatFunc.from_fraction(0)
