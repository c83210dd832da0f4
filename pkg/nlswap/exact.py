# Copyright 2026 by the nlswap authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exact arithmetic in the number field Q(r), r = 2^(1/4).

Every probability and Bell value in this package is an element of this
field. It contains sqrt(2) = r^2, and therefore Tsirelson's bound
1/2 + 1/sqrt(2), as well as 2^(-3/4) = r/2.
"""

import decimal
import fractions
import functools
import math
import re
import threading

from .errors import ParseError, UnrepresentableError

Rational = fractions.Fraction

# NOTE: Rational brackets (lo, hi) around 2^(1/4), one per bisection
#   depth. The list only ever grows, and growing it is serialized by the
#   lock, so readers can index it without locking.
_root_brackets = [(Rational(1), Rational(3, 2))]
_root_brackets_lock = threading.Lock()

_FIRST_SIGN_DEPTH = 8
_SIGN_DEPTH_STEP = 4


def _root_bracket(depth):
    if depth < len(_root_brackets):
        return _root_brackets[depth]

    with _root_brackets_lock:
        while len(_root_brackets) <= depth:
            lo, hi = _root_brackets[-1]
            mid = (lo + hi) / 2

            # mid^4 == 2 has no rational solution
            if mid ** 4 < 2:
                _root_brackets.append((mid, hi))
            else:
                _root_brackets.append((lo, mid))

        return _root_brackets[depth]


def _value_bounds(coefficients, lo, hi):
    lower = upper = coefficients[0]
    lo_power = hi_power = 1

    for c in coefficients[1:]:
        lo_power *= lo
        hi_power *= hi

        if c >= 0:
            lower += c * lo_power
            upper += c * hi_power
        else:
            lower += c * hi_power
            upper += c * lo_power

    return lower, upper


def _to_rational(value):
    if isinstance(value, Rational):
        return value

    if isinstance(value, int):
        return Rational(value)

    raise TypeError(
        'coefficients must be int or Fraction, not {}'.format(
            type(value).__name__
        )
    )


# --------------------------------------------------------------------
# Q(sqrt 2) helpers; an element u + v*sqrt(2) is the pair (u, v)
# --------------------------------------------------------------------


def _q2_mul(x, y):
    return (x[0] * y[0] + 2 * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _q2_conj(x):
    return (x[0], -x[1])


def _q2_norm(x):
    return x[0] * x[0] - 2 * x[1] * x[1]


def _q2_div(x, y):
    n = _q2_norm(y)
    p = _q2_mul(x, _q2_conj(y))
    return (p[0] / n, p[1] / n)


def _rational_sqrt(q):
    if q < 0:
        return None

    n, d = q.numerator, q.denominator
    sn, sd = math.isqrt(n), math.isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Rational(sn, sd)

    return None


def _q2_sqrt_candidates(x):
    """Roots p + q*sqrt(2) of x, up to sign; may be empty."""

    u, v = x
    found = []

    if v == 0:
        s = _rational_sqrt(u)
        if s is not None:
            found.append((s, Rational(0)))

        t = _rational_sqrt(u / 2)
        if t is not None:
            found.append((Rational(0), t))

        return found

    # (p + q*sqrt2)^2 = u + v*sqrt2  =>  p^2 = (u +- sqrt(u^2 - 2v^2)) / 2
    root = _rational_sqrt(u * u - 2 * v * v)
    if root is None:
        return found

    for p_squared in ((u + root) / 2, (u - root) / 2):
        p = _rational_sqrt(p_squared)
        if p:
            found.append((p, v / (2 * p)))

    return found


@functools.total_ordering
class ExactScalar(object):
    """An element c0 + c1*r + c2*r^2 + c3*r^3 of Q(2^(1/4)).

    Instances are immutable and hashable. Since {1, r, r^2, r^3} is a
    basis of the field over the rationals, two scalars are equal iff
    their coefficients are equal, so equality never needs to look at
    the real value. Ordering does, and is decided exactly by
    refining a rational bracket around r (see ``sign()``).

    Args:
        c0, c1, c2, c3 (int or fractions.Fraction): Coefficients of
            1, r, r^2 and r^3. Floats are rejected, since they are not
            exact.
    """

    __slots__ = ('_c',)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self._c = (
            _to_rational(c0),
            _to_rational(c1),
            _to_rational(c2),
            _to_rational(c3),
        )

    @classmethod
    def parse(cls, text):
        """Parse the canonical serialization, or any field expression.

        The accepted language has integer literals, ``+ - * /``,
        implicit multiplication, ``^`` with an integer exponent,
        parentheses, and the symbols ``r`` (2^(1/4)) and ``BQ``
        (Tsirelson's bound for the CH expression).

        Raises:
            nlswap.errors.ParseError: The text is malformed; the error
                records the offending position.
        """

        return parse_scalar(text)

    @property
    def coefficients(self):
        """tuple: The four rational coefficients (c0, c1, c2, c3)."""
        return self._c

    def is_rational(self):
        c = self._c
        return not (c[1] or c[2] or c[3])

    # ----------------------------------------------------------------
    # Arithmetic
    # ----------------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other

        a, b = self._c, other._c
        return ExactScalar(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])

    __radd__ = __add__

    def __neg__(self):
        a = self._c
        return ExactScalar(-a[0], -a[1], -a[2], -a[3])

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other

        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other

        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other

        a, b = self._c, other._c

        if other.is_rational():
            k = b[0]
            return ExactScalar(a[0] * k, a[1] * k, a[2] * k, a[3] * k)

        if self.is_rational():
            k = a[0]
            return ExactScalar(b[0] * k, b[1] * k, b[2] * k, b[3] * k)

        product = [Rational(0)] * 4
        for i in range(4):
            if not a[i]:
                continue

            for j in range(4):
                term = a[i] * b[j]
                k = i + j

                # r^4 = 2
                if k >= 4:
                    product[k - 4] += 2 * term
                else:
                    product[k] += term

        return ExactScalar(*product)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other

        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other

        return other * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented

        if exponent < 0:
            return self.inverse() ** -exponent

        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base

            base = base * base
            exponent >>= 1

        return result

    def inverse(self):
        """Return the multiplicative inverse.

        Writes the value as A + B*r with A, B in Q(sqrt 2). Multiplying
        by A - B*r lands in Q(sqrt 2), and multiplying by the conjugate
        there lands in Q.

        Raises:
            ZeroDivisionError: The value is zero.
        """

        c = self._c
        if not any(c):
            raise ZeroDivisionError('inverse of zero in Q(2^(1/4))')

        if self.is_rational():
            return ExactScalar(1 / c[0])

        big_a = (c[0], c[2])
        big_b = (c[1], c[3])

        # (A + Br)(A - Br) = A^2 - B^2 sqrt(2)
        reduced = _q2_mul(big_a, big_a)
        b_squared = _q2_mul(big_b, big_b)
        reduced = (reduced[0] - 2 * b_squared[1], reduced[1] - b_squared[0])

        conj = _q2_conj(reduced)
        n = _q2_norm(reduced)

        new_a = _q2_mul(big_a, conj)
        new_b = _q2_mul(big_b, conj)

        return ExactScalar(
            new_a[0] / n, -new_b[0] / n, new_a[1] / n, -new_b[1] / n
        )

    def sqrt(self):
        """Return the non-negative square root, if it lies in the field.

        Raises:
            nlswap.errors.UnrepresentableError: The value is negative,
                or its square root is not an element of Q(2^(1/4)).
        """

        s = self.sign()
        if s < 0:
            raise UnrepresentableError(
                'square root of negative value {}'.format(self)
            )

        if s == 0:
            return ZERO

        c = self._c
        big_a = (c[0], c[2])
        big_b = (c[1], c[3])
        candidates = []

        if not (big_b[0] or big_b[1]):
            for p, q in _q2_sqrt_candidates(big_a):
                candidates.append(ExactScalar(p, 0, q))

            # (D r)^2 = D^2 sqrt(2) = A  =>  D^2 = A / sqrt(2)
            for p, q in _q2_sqrt_candidates((c[2], c[0] / 2)):
                candidates.append(ExactScalar(0, p, 0, q))
        else:
            # (C + Dr)^2 = A + Br  =>  C^2 = (A +- sqrt(A^2 - sqrt2 B^2)) / 2
            a_squared = _q2_mul(big_a, big_a)
            b_squared = _q2_mul(big_b, big_b)
            disc = (
                a_squared[0] - 2 * b_squared[1],
                a_squared[1] - b_squared[0],
            )

            for root in _q2_sqrt_candidates(disc):
                for sgn in (1, -1):
                    c_squared = (
                        (big_a[0] + sgn * root[0]) / 2,
                        (big_a[1] + sgn * root[1]) / 2,
                    )

                    for big_c in _q2_sqrt_candidates(c_squared):
                        if not (big_c[0] or big_c[1]):
                            continue

                        big_d = _q2_div(big_b, (2 * big_c[0], 2 * big_c[1]))
                        candidates.append(
                            ExactScalar(big_c[0], big_d[0], big_c[1], big_d[1])
                        )

        for candidate in candidates:
            if candidate * candidate == self:
                return candidate if candidate.sign() >= 0 else -candidate

        raise UnrepresentableError(
            'square root of {} is not in Q(2^(1/4))'.format(self)
        )

    # ----------------------------------------------------------------
    # Sign and ordering
    # ----------------------------------------------------------------

    def sign(self):
        """Return the exact sign of the real value as -1, 0 or +1.

        The value is evaluated over a rational bracket around r, and
        the bracket is bisected until the resulting interval excludes
        zero. This terminates for every non-zero value, and zero is
        recognized from the coefficients alone.
        """

        c = self._c
        if not any(c):
            return 0

        if self.is_rational():
            return 1 if c[0] > 0 else -1

        depth = _FIRST_SIGN_DEPTH
        while True:
            lo, hi = _root_bracket(depth)
            lower, upper = _value_bounds(c, lo, hi)

            if lower > 0:
                return 1

            if upper < 0:
                return -1

            depth += _SIGN_DEPTH_STEP

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return any(self._c)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other

        return self._c == other._c

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other

        return (self - other).sign() < 0

    def __hash__(self):
        if self.is_rational():
            return hash(self._c[0])

        return hash(self._c)

    # ----------------------------------------------------------------
    # Rendering
    # ----------------------------------------------------------------

    def __float__(self):
        root = 2.0 ** 0.25
        c = self._c
        return (
            float(c[0])
            + float(c[1]) * root
            + float(c[2]) * root ** 2
            + float(c[3]) * root ** 3
        )

    def to_decimal(self, precision):
        """Render as a decimal rounded to *precision* fractional digits.

        For display only; the exact value is what ``serialize()`` emits.
        """

        if not isinstance(precision, int):
            raise TypeError('precision must be an int')

        if precision < 0:
            raise ValueError('precision must be >= 0')

        with decimal.localcontext() as ctx:
            ctx.prec = precision + 30
            root = decimal.Decimal(2).sqrt().sqrt()
            total = decimal.Decimal(0)

            for k, c in enumerate(self._c):
                if c:
                    term = decimal.Decimal(c.numerator) / c.denominator
                    total += term * root ** k

            quantum = decimal.Decimal(1).scaleb(-precision)
            return total.quantize(quantum, rounding=decimal.ROUND_HALF_EVEN)

    def serialize(self):
        """Return ``p0/q0 + p1/q1 r + p2/q2 r^2 + p3/q3 r^3``."""

        suffixes = ('', ' r', ' r^2', ' r^3')
        return ' + '.join(
            '{}/{}{}'.format(c.numerator, c.denominator, suffix)
            for c, suffix in zip(self._c, suffixes)
        )

    def __str__(self):
        suffixes = ('', 'r', 'r^2', 'r^3')
        parts = []

        for c, suffix in zip(self._c, suffixes):
            if not c:
                continue

            magnitude = abs(c)
            if not suffix:
                text = str(magnitude)
            elif magnitude == 1:
                text = suffix
            else:
                text = '{} {}'.format(magnitude, suffix)

            if not parts:
                parts.append('-' + text if c < 0 else text)
            else:
                parts.append(('- ' if c < 0 else '+ ') + text)

        return ' '.join(parts) if parts else '0'

    def __repr__(self):
        return 'ExactScalar({!r})'.format(str(self))


def _coerce(value):
    if isinstance(value, ExactScalar):
        return value

    if isinstance(value, (int, Rational)):
        return ExactScalar(value)

    return NotImplemented


def as_exact(value):
    """Coerce an int, Fraction, expression string or ExactScalar.

    Raises:
        TypeError: The value is a float or another inexact type.
        nlswap.errors.ParseError: A string could not be parsed.
    """

    if isinstance(value, str):
        return parse_scalar(value)

    coerced = _coerce(value)
    if coerced is NotImplemented:
        raise TypeError(
            'cannot represent {} exactly'.format(type(value).__name__)
        )

    return coerced


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
HALF = ExactScalar(Rational(1, 2))
ROOT = ExactScalar(0, 1)
SQRT2 = ExactScalar(0, 0, 1)
INV_SQRT2 = ExactScalar(0, 0, Rational(1, 2))
TSIRELSON_BOUND = ExactScalar(Rational(1, 2), 0, Rational(1, 2))

_SYMBOLS = {
    'r': ROOT,
    'BQ': TSIRELSON_BOUND,
}


# --------------------------------------------------------------------
# Expression parsing
# --------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r'(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()])'
)


def _tokenize(text):
    tokens = []
    pos = 0

    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue

        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(
                'unexpected character {!r}'.format(text[pos]), pos
            )

        tokens.append((match.lastgroup, match.group(), pos))
        pos = match.end()

    return tokens


class _ExpressionParser(object):
    __slots__ = ('_tokens', '_index', '_end')

    def __init__(self, text):
        self._tokens = _tokenize(text)
        self._index = 0
        self._end = len(text)

    def parse(self):
        if not self._tokens:
            raise ParseError('empty expression', 0)

        value = self._expression()

        if self._index < len(self._tokens):
            __, text, pos = self._tokens[self._index]
            raise ParseError('unexpected {!r}'.format(text), pos)

        return value

    def _peek(self):
        if self._index < len(self._tokens):
            return self._tokens[self._index]

        return None

    def _peek_op(self, ops):
        token = self._peek()
        if token is not None and token[0] == 'op' and token[1] in ops:
            return token

        return None

    def _take(self):
        token = self._tokens[self._index]
        self._index += 1
        return token

    def _expression(self):
        value = self._term()

        while True:
            token = self._peek_op('+-')
            if token is None:
                return value

            self._take()
            rhs = self._term()
            value = value + rhs if token[1] == '+' else value - rhs

    def _term(self):
        value = self._unary()

        while True:
            token = self._peek()
            if token is None:
                return value

            kind, text, pos = token

            if kind == 'op' and text in '*/':
                self._take()
                rhs = self._unary()

                if text == '*':
                    value = value * rhs
                elif not rhs:
                    raise ParseError('division by zero', pos)
                else:
                    value = value / rhs

            elif kind in ('int', 'name') or text == '(':
                # Implicit multiplication, as in "1/2 r^2"
                value = value * self._power()

            else:
                return value

    def _unary(self):
        token = self._peek_op('+-')
        if token is None:
            return self._power()

        self._take()
        operand = self._unary()
        return -operand if token[1] == '-' else operand

    def _power(self):
        base = self._atom()

        caret = self._peek_op('^')
        if caret is None:
            return base

        self._take()
        negative = self._peek_op('-') is not None
        if negative:
            self._take()

        token = self._peek()
        if token is None or token[0] != 'int':
            pos = token[2] if token is not None else self._end
            raise ParseError('expected an integer exponent', pos)

        self._take()
        exponent = int(token[1])

        if negative and not base:
            raise ParseError('zero raised to a negative power', caret[2])

        return base ** (-exponent if negative else exponent)

    def _atom(self):
        token = self._peek()
        if token is None:
            raise ParseError('unexpected end of input', self._end)

        kind, text, pos = self._take()

        if kind == 'int':
            return ExactScalar(int(text))

        if kind == 'name':
            try:
                return _SYMBOLS[text]
            except KeyError:
                raise ParseError('unknown symbol {!r}'.format(text), pos)

        if text == '(':
            value = self._expression()

            closing = self._peek_op(')')
            if closing is None:
                token = self._peek()
                pos = token[2] if token is not None else self._end
                raise ParseError("expected ')'", pos)

            self._take()
            return value

        raise ParseError('unexpected {!r}'.format(text), pos)


def parse_scalar(text):
    """Parse a field expression such as ``3/2`` or ``1/2 + r^2/2``.

    See ``ExactScalar.parse()`` for the accepted language.
    """

    if not isinstance(text, str):
        raise TypeError('text must be a str')

    return _ExpressionParser(text).parse()
