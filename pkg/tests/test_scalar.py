from fractions import Fraction

import pytest
from hypothesis import given

from skewtorsion.scalar import ComplexScalar, Scalar, format_scalar, parse_scalar, rational_sqrt
from strategies import scalars


def test_sqrt3_squares_to_three():
    r = Scalar(0, 1)
    assert r * r == Scalar(3)


def test_inverse_of_conjugate_pair():
    x = Scalar(2, 1)
    assert x * x.inverse() == Scalar(1)
    assert x.inverse() == Scalar(2, -1)


@pytest.mark.parametrize("text,value", [
    ("1/2+1/3*s3", Scalar(Fraction(1, 2), Fraction(1, 3))),
    ("-7", Scalar(-7)),
    ("-2*s3", Scalar(0, -2)),
    ("0", Scalar(0)),
])
def test_parse(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("bad", ["", "1/0", "s3", "1+", "abc", "1/2*s3*s3"])
def test_parse_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_scalar(bad)


@given(scalars)
def test_format_parse_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(scalars, scalars)
def test_order_matches_floats(x, y):
    if abs(float(x) - float(y)) > 1e-9:
        assert (x < y) == (float(x) < float(y))


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if not b.is_zero():
        assert (a / b) * b == a


def test_sign_of_near_cancellation():
    # 97 - 56 sqrt3 is tiny but positive
    assert Scalar(97, -56).sign() == 1
    assert Scalar(-97, 56).sign() == -1


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(5) is None


def test_complex_arithmetic():
    i = ComplexScalar(0, 1)
    assert i * i == ComplexScalar(-1)
    z = ComplexScalar(Scalar(1, 1), Scalar(2))
    assert z * z.inverse() == ComplexScalar(1)
    assert (z * z.conjugate()).is_real()
