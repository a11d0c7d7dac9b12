"""Exact scalar tower: arithmetic, uniqueness, evaluation, encodings."""

from fractions import Fraction

import mpmath
import pytest

from aalie.errors import ParseError
from aalie.exactnum import (
    ExactScalar,
    GaussianRational,
    ONE,
    PI,
    TWO_PI,
    ZERO,
    encode_exact_scalar,
    gaussian,
    parse_exact_scalar,
    parse_rational,
    scalar,
    tau_multiple,
)


def test_add_componentwise():
    a = scalar(1)
    b = tau_multiple(1)
    s = a + b
    assert s.alg == gaussian(1) and s.tau == gaussian(1)
    assert abs(s.evaluate() - (1 + 2j * mpmath.pi)) < 1e-15


def test_neg():
    a = scalar(Fraction(1, 2))
    n = -a
    assert n.alg == gaussian(Fraction(-1, 2)) and n.tau.is_zero()


def test_scale_by_i():
    # 2*pi*i scaled by i is -2*pi
    v = tau_multiple(1).scale(gaussian(0, 1))
    assert v.tau == gaussian(0, 1)
    assert abs(v.evaluate() - (-2 * 3.141592653589793)) < 1e-12


def test_eval_two_pi_i():
    assert abs(tau_multiple(1).evaluate() - 6.283185307179586j) < 1e-15
    assert scalar(1).evaluate() == 1 + 0j


def test_eval_against_high_precision_pi():
    # oracle: evaluate 1/3 + pi*i with 50-digit pi and compare
    mpmath.mp.dps = 50
    third = mpmath.mpf(1) / 3
    s = ExactScalar(gaussian(Fraction(1, 3)), gaussian(0, Fraction(-1, 2)))
    # 2*pi*i * (-i/2) = pi
    expected = complex(third + mpmath.pi)
    assert abs(s.evaluate() - expected) < 4e-16 * abs(expected)
    t = ExactScalar(gaussian(Fraction(1, 3)), gaussian(Fraction(1, 2)))
    expected2 = complex(mpmath.mpc(third, mpmath.pi))
    assert abs(t.evaluate() - expected2) < 4e-16 * abs(expected2)


def test_is_zero_is_exact():
    assert ZERO.is_zero()
    tiny = ExactScalar(gaussian(0), gaussian(Fraction(1, 10**9)))
    assert not tiny.is_zero()
    a = scalar(1)
    assert (a - a).is_zero()


def test_uniqueness_of_representation():
    # pi is transcendental: equal values have equal components
    a = ExactScalar(gaussian(2), gaussian(0, 1))
    b = ExactScalar(gaussian(2), gaussian(0, 1))
    assert a == b
    assert a != ExactScalar(gaussian(2), gaussian(0, Fraction(999, 1000)))


def test_try_mul():
    a = scalar(Fraction(3, 2))
    b = TWO_PI
    assert a.try_mul(b) == b.scale(Fraction(3, 2))
    assert TWO_PI.try_mul(TWO_PI) is None  # 4*pi^2 leaves the module
    assert PI.try_mul(scalar(2)) == TWO_PI


def test_try_div():
    assert TWO_PI.try_div(scalar(2)) == PI
    assert TWO_PI.try_div(PI) == scalar(2)
    assert scalar(1).try_div(TWO_PI) is None  # 1/(2*pi) leaves the module
    mixed = scalar(1) + TWO_PI
    assert mixed.scale(gaussian(0, 3)).try_div(mixed) == scalar(gaussian(0, 3))
    assert scalar(1).try_div(mixed) is None
    with pytest.raises(ZeroDivisionError):
        ONE.try_div(ZERO)


def test_gaussian_field_ops():
    i = gaussian(0, 1)
    assert i * i == gaussian(-1)
    assert (gaussian(1, 1) / i) == gaussian(1, -1)
    assert gaussian(1, 1).conjugate() == gaussian(1, -1)
    with pytest.raises(ZeroDivisionError):
        gaussian(1) / gaussian(0)


def test_encodings_roundtrip():
    s = ExactScalar(gaussian(Fraction(1, 3), Fraction(-2, 7)),
                    gaussian(Fraction(5), Fraction(0)))
    assert parse_exact_scalar(encode_exact_scalar(s)) == s
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("7") == Fraction(7)


def test_bad_rational_rejected():
    with pytest.raises(ParseError):
        parse_rational("1/0", "x")
    with pytest.raises(ParseError):
        parse_rational("pi", "x")
    with pytest.raises(ParseError):
        parse_exact_scalar({"alg": {"re": "1", "im": "0"}, "bogus": {}}, "x")
