import decimal
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st
import pytest

import nlswap
from nlswap import ExactScalar


small_fractions = st.fractions(
    min_value=-5, max_value=5, max_denominator=12
)

scalars = st.builds(
    ExactScalar, small_fractions, small_fractions, small_fractions,
    small_fractions,
)


def test_root_to_the_fourth_is_two():
    assert nlswap.ROOT ** 4 == 2
    assert nlswap.ROOT ** 2 == nlswap.SQRT2
    assert nlswap.SQRT2 * nlswap.INV_SQRT2 == 1


def test_tsirelson_bound():
    assert nlswap.TSIRELSON_BOUND == Fraction(1, 2) + nlswap.INV_SQRT2
    assert str(nlswap.TSIRELSON_BOUND) == '1/2 + 1/2 r^2'


@pytest.mark.parametrize(
    'text,expected',
    [
        ('3/2', ExactScalar(Fraction(3, 2))),
        ('-1/2', ExactScalar(Fraction(-1, 2))),
        ('BQ', nlswap.TSIRELSON_BOUND),
        ('1/2 + r^2/2', nlswap.TSIRELSON_BOUND),
        ('1/2 + 1/2 r^2', nlswap.TSIRELSON_BOUND),  # Implicit product
        ('2^-1', ExactScalar(Fraction(1, 2))),
        ('r^-3', ExactScalar(0, Fraction(1, 2))),  # 2^(-3/4) = r/2
        ('(1 - 1/2 r^2)/2', ExactScalar(Fraction(1, 2), 0, Fraction(-1, 4))),
        ('2 * (r + 1) - 2r', ExactScalar(2)),
    ],
)
def test_parse(text, expected):
    assert nlswap.parse_scalar(text) == expected
    assert ExactScalar.parse(text) == expected


def test_serialize():
    assert nlswap.HALF.serialize() == '1/2 + 0/1 r + 0/1 r^2 + 0/1 r^3'

    value = ExactScalar(Fraction(-1, 3), 2, 0, Fraction(5, 7))
    assert value.serialize() == '-1/3 + 2/1 r + 0/1 r^2 + 5/7 r^3'
    assert nlswap.parse_scalar(value.serialize()) == value


@pytest.mark.parametrize(
    'text,position',
    [
        ('', 0),
        ('1/2 + ?', 6),
        ('3/0', 1),
        ('x', 0),
        ('(1', 2),
        ('1 +', 3),
        ('r^x', 2),
        ('1 2)', 3),
    ],
)
def test_parse_errors_carry_position(text, position):
    with pytest.raises(nlswap.ParseError) as excinfo:
        nlswap.parse_scalar(text)

    assert excinfo.value.position == position
    assert 'position {}'.format(position) in str(excinfo.value)
    assert excinfo.value.code == 'parse'


@pytest.mark.parametrize('value', [0.5, 1e-3, complex(1, 0)])
def test_inexact_values_rejected(value):
    with pytest.raises(TypeError):
        nlswap.as_exact(value)

    with pytest.raises(TypeError):
        ExactScalar(value)


@given(scalars, scalars)
def test_field_arithmetic(x, y):
    assert x + y - y == x
    assert (x + y) * 2 == x * 2 + y * 2
    assert x * y == y * x

    if y:
        assert x / y * y == x


@given(scalars)
def test_inverse(x):
    if not x:
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == 1


@given(scalars)
def test_sqrt_of_square(x):
    assert (x * x).sqrt() == abs(x)


@pytest.mark.parametrize(
    'value,root',
    [
        (ExactScalar(Fraction(1, 2)), nlswap.INV_SQRT2),
        (ExactScalar(Fraction(49, 100)), ExactScalar(Fraction(7, 10))),
        (nlswap.SQRT2, nlswap.ROOT),
        (ExactScalar(3, 0, 2), ExactScalar(1, 0, 1)),  # (1 + sqrt2)^2
        (nlswap.ZERO, nlswap.ZERO),
    ],
)
def test_sqrt(value, root):
    assert value.sqrt() == root


@pytest.mark.parametrize(
    'value',
    [
        ExactScalar(3),
        ExactScalar(Fraction(1, 6)),
        ExactScalar(-1),
        nlswap.ROOT,  # 2^(1/8) is not in the field
    ],
)
def test_sqrt_unrepresentable(value):
    with pytest.raises(nlswap.UnrepresentableError):
        value.sqrt()


@pytest.mark.parametrize(
    'lower,value,upper',
    [
        (Fraction(1189, 1000), nlswap.ROOT, Fraction(119, 100)),
        (Fraction(7071, 10000), nlswap.INV_SQRT2, Fraction(7072, 10000)),
        (Fraction(6, 5), nlswap.TSIRELSON_BOUND, Fraction(121, 100)),
    ],
)
def test_ordering(lower, value, upper):
    assert lower < value < upper
    assert value > lower
    assert not value < lower
    assert max(value, ExactScalar(lower)) == value


@given(scalars, scalars)
def test_sign_agrees_with_float(x, y):
    difference = float(x) - float(y)
    if abs(difference) > 1e-9:
        assert (x < y) == (difference < 0)


def test_sign():
    assert nlswap.ZERO.sign() == 0
    assert (nlswap.TSIRELSON_BOUND - Fraction(3, 2)).sign() == -1
    assert (nlswap.ROOT ** 3 - nlswap.ROOT * 2 + 1).sign() == 1

    # r^2 - sqrt2 is zero without being syntactically zero
    assert (nlswap.ROOT * nlswap.ROOT - nlswap.SQRT2).sign() == 0


@given(scalars)
def test_sign_is_odd_and_squares_are_nonnegative(x):
    assert x.sign() == -(-x).sign()

    square = (x * x).sign()
    assert square >= 0
    assert (square == 0) == (x == 0)


def test_rational_values_hash_like_fractions():
    assert hash(ExactScalar(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert len({ExactScalar(1), nlswap.ONE, ExactScalar(Fraction(2, 2))}) == 1


def test_to_decimal():
    bound = nlswap.TSIRELSON_BOUND
    assert bound.to_decimal(12) == decimal.Decimal('1.207106781187')
    assert bound.to_decimal(0) == decimal.Decimal('1')
    assert ExactScalar(Fraction(1, 3)).to_decimal(3) == decimal.Decimal(
        '0.333'
    )
    assert float(bound) == pytest.approx(1.2071067811865475)

    with pytest.raises(ValueError):
        bound.to_decimal(-1)

    with pytest.raises(TypeError):
        bound.to_decimal(1.5)


def test_arithmetic_examples():
    r = nlswap.ROOT

    assert nlswap.HALF + nlswap.INV_SQRT2 == nlswap.TSIRELSON_BOUND
    assert (1 + r) + (1 - r) == 2
    assert r * r ** 3 == 2
    assert nlswap.INV_SQRT2 * nlswap.INV_SQRT2 == Fraction(1, 2)

    quarter = (r / 2) * (r / 2)
    assert quarter == nlswap.SQRT2 / 4
    assert float(quarter) == pytest.approx(1 / (2 * 2 ** 0.5), abs=1e-12)
