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

"""Linear functionals on boxes: CH, the deterministic coupler, couplers."""

from .boxes import BITS, index
from .errors import DegenerateRangeError
from .exact import as_exact, ONE, Rational, ZERO


class LinearFunctional(object):
    """An affine function P -> w . P + offset on box tables.

    Args:
        coefficients (iterable): 16 weights in the (a, b, x, y) layout
            of ``nlswap.boxes.BipartiteBox``.
        offset: Constant term; zero for every functional of the theory,
            but available for shifted inequalities.
    """

    __slots__ = ('_w', '_offset')

    def __init__(self, coefficients, offset=0):
        weights = tuple(as_exact(c) for c in coefficients)
        if len(weights) != 16:
            raise ValueError(
                'a functional has 16 coefficients, got {}'.format(
                    len(weights)
                )
            )

        self._w = weights
        self._offset = as_exact(offset)

    @classmethod
    def from_entries(cls, entries, offset=0):
        """Build from a mapping {(a, b, x, y): weight}; others are zero."""

        weights = [ZERO] * 16
        for (a, b, x, y), weight in entries.items():
            weights[index(a, b, x, y)] = as_exact(weight)

        return cls(weights, offset)

    @property
    def coefficients(self):
        return self._w

    @property
    def offset(self):
        return self._offset

    def evaluate(self, box):
        total = self._offset
        for w, p in zip(self._w, box.table):
            if w:
                total = total + w * p

        return total

    __call__ = evaluate

    def pattern(self, boxes):
        """Return the tuple of values on *boxes*.

        On the non-signalling vertices this identifies the functional
        up to terms that vanish on every non-signalling box.
        """

        return tuple(self.evaluate(box) for box in boxes)

    def __add__(self, other):
        if not isinstance(other, LinearFunctional):
            return NotImplemented

        return LinearFunctional(
            (v + w for v, w in zip(self._w, other._w)),
            self._offset + other._offset,
        )

    def __sub__(self, other):
        if not isinstance(other, LinearFunctional):
            return NotImplemented

        return LinearFunctional(
            (v - w for v, w in zip(self._w, other._w)),
            self._offset - other._offset,
        )

    def __neg__(self):
        return LinearFunctional((-w for w in self._w), -self._offset)

    def __mul__(self, factor):
        factor = as_exact(factor)
        return LinearFunctional(
            (w * factor for w in self._w), self._offset * factor
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LinearFunctional):
            return NotImplemented

        return self._w == other._w and self._offset == other._offset

    def __hash__(self):
        return hash((self._w, self._offset))

    def __repr__(self):
        terms = [
            '{}*P({}{}|{}{})'.format(w, a, b, x, y)
            for w, (a, b, x, y) in zip(self._w, _ENTRY_NAMES)
            if w
        ]
        if self._offset:
            terms.append(str(self._offset))

        return 'LinearFunctional({})'.format(' + '.join(terms) or '0')

    def to_dict(self):
        return {
            'coefficients': [w.serialize() for w in self._w],
            'offset': self._offset.serialize(),
        }

    @classmethod
    def from_dict(cls, record):
        return cls(record['coefficients'], record.get('offset', 0))


_ENTRY_NAMES = tuple(
    (a, b, x, y) for a in BITS for b in BITS for x in BITS for y in BITS
)


def ch_functional():
    """Return CH = P(11|00) + P(00|10) + P(00|01) - P(00|11).

    Local boxes satisfy 0 <= CH <= 1; the PR box reaches 3/2.
    """

    return LinearFunctional.from_entries({
        (1, 1, 0, 0): 1,
        (0, 0, 1, 0): 1,
        (0, 0, 0, 1): 1,
        (0, 0, 1, 1): -1,
    })


def ch_value(box):
    """Return the CH value of *box*."""
    return _CH.evaluate(box)


def deterministic_coupler():
    """Return chi_D, the sum of the four P(ab|00) entries.

    It evaluates to 1 on every normalized table, signalling or not.
    """

    return LinearFunctional.from_entries(
        {(a, b, 0, 0): 1 for a in BITS for b in BITS}
    )


_CH = ch_functional()
_CHI_D = deterministic_coupler()


class Coupler(object):
    """A coupler chi = (CH - X_b * chi_D) / (X_t - X_b).

    It outputs b' = 0 with certainty on boxes with CH = X_t and b' = 1
    with certainty on boxes with CH = X_b. Use ``make_coupler()`` to
    construct one.

    Attributes:
        functional (LinearFunctional): The coupler as a covector.
        x_top (ExactScalar): X_t.
        x_bottom (ExactScalar): X_b.
    """

    __slots__ = ('_functional', '_x_top', '_x_bottom')

    def __init__(self, functional, x_top, x_bottom):
        self._functional = functional
        self._x_top = x_top
        self._x_bottom = x_bottom

    @property
    def functional(self):
        return self._functional

    @property
    def x_top(self):
        return self._x_top

    @property
    def x_bottom(self):
        return self._x_bottom

    def evaluate(self, box):
        """Return the probability P(b'=0) on *box*."""
        return self._functional.evaluate(box)

    __call__ = evaluate

    def __eq__(self, other):
        if not isinstance(other, Coupler):
            return NotImplemented

        return (self._x_top, self._x_bottom) == (other._x_top, other._x_bottom)

    def __hash__(self):
        return hash((self._x_top, self._x_bottom))

    def __repr__(self):
        return 'Coupler(x_top={}, x_bottom={})'.format(
            self._x_top, self._x_bottom
        )

    def to_dict(self):
        record = {
            'x_top': self._x_top.serialize(),
            'x_bottom': self._x_bottom.serialize(),
        }
        record.update(self._functional.to_dict())
        return record


def make_coupler(x_top, x_bottom):
    """Return the coupler for a model with CH values in [X_b, X_t].

    Args:
        x_top: X_t, the largest CH value of the model.
        x_bottom: X_b, the smallest CH value of the model.

    Raises:
        nlswap.errors.DegenerateRangeError: X_b >= X_t.
    """

    x_top = as_exact(x_top)
    x_bottom = as_exact(x_bottom)

    if x_bottom >= x_top:
        raise DegenerateRangeError(
            'X_b must be < X_t, got X_t={}, X_b={}'.format(x_top, x_bottom)
        )

    scale = ONE / (x_top - x_bottom)
    functional = (_CH - _CHI_D * x_bottom) * scale
    return Coupler(functional, x_top, x_bottom)


def genuine_box_coupler():
    """Return the coupler (3/2, 0) of the genuine box model.

    On any box it evaluates to (2/3) CH.
    """

    return make_coupler(Rational(3, 2), 0)


def coupler_valid_on(coupler, boxes):
    """Return True iff 0 <= P(b'=0) <= 1 on every box in *boxes*.

    By linearity it is enough to pass the extremal boxes of a model.
    """

    for box in boxes:
        value = coupler.evaluate(box)
        if value < 0 or value > 1:
            return False

    return True
