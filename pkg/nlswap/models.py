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

"""Theories with bounded non-locality.

A theory is described by the range [X_b, X_t] of CH values its genuine
boxes may take. Its genuine non-local box is the isotropic box with CH
value X_t; its genuine local boxes are products of the noisy local
boxes at the same noise level. This module classifies the couplers of
such theories and checks the two ways in which Tsirelson's bound
appears.
"""

import enum
import itertools

from .boxes import BITS, make_isotropic, make_noisy_local_pair, tensor
from .errors import DegenerateRangeError, DomainError, ParameterRangeError
from .exact import as_exact, HALF, ONE, Rational, TSIRELSON_BOUND, ZERO
from .functionals import (
    ch_value,
    coupler_valid_on,
    genuine_box_coupler,
    make_coupler,
)
from .swap import isotropic_with_ch, swap_threshold

_THREE_HALVES = Rational(3, 2)


class CouplerClass(enum.Enum):
    """Where a coupler (X_t, X_b) sits relative to the valid region.

    Valid couplers satisfy

        1/2 - (X_t - 1/2)^2 < X_b <= (3/2 - X_t)/2

    The upper bound is attained by perfect couplers. The lower bound
    is open; couplers on it are reported as MINIMAL_BOUNDARY and, like
    those below it, do not swap.
    """

    NO_SWAPPING = 'NoSwapping'
    VALID = 'Valid'
    MINIMAL_BOUNDARY = 'MinimalBoundary'
    PERFECT = 'Perfect'
    CREATES_NONLOCALITY = 'CreatesNonlocality'

    @property
    def swaps(self):
        """True iff two genuine non-local boxes swap to a non-local box
        without exceeding X_t."""

        return self in (CouplerClass.VALID, CouplerClass.PERFECT)


def _check_x_top(x_top):
    x_top = as_exact(x_top)
    if x_top <= 1 or x_top > _THREE_HALVES:
        raise DomainError('X_t must lie in (1, 3/2], got {}'.format(x_top))

    return x_top


def _perfect_xb(x_top):
    return (_THREE_HALVES - x_top) / 2


def _minimal_xb(x_top):
    excess = x_top - HALF
    return HALF - excess * excess


def perfect_xb(x_top):
    """Return (3/2 - X_t)/2, the X_b of the perfect coupler.

    Raises:
        nlswap.errors.DomainError: X_t is outside (1, 3/2].
    """

    return _perfect_xb(_check_x_top(x_top))


def minimal_xb(x_top):
    """Return 1/2 - (X_t - 1/2)^2, the open lower bound on X_b.

    Raises:
        nlswap.errors.DomainError: X_t is outside (1, 3/2].
    """

    return _minimal_xb(_check_x_top(x_top))


def limit_values():
    """Return (perfect_xb, minimal_xb) continued to the X_t -> 1 limit,
    where both equal 1/4."""

    return _perfect_xb(ONE), _minimal_xb(ONE)


def classify(x_top, x_bottom):
    """Classify the coupler (X_t, X_b).

    Raises:
        nlswap.errors.DomainError: X_t is outside (1, 3/2].
    """

    x_top = _check_x_top(x_top)
    x_bottom = as_exact(x_bottom)

    perfect = _perfect_xb(x_top)
    if x_bottom > perfect:
        return CouplerClass.CREATES_NONLOCALITY
    if x_bottom == perfect:
        return CouplerClass.PERFECT

    minimal = _minimal_xb(x_top)
    if x_bottom == minimal:
        return CouplerClass.MINIMAL_BOUNDARY
    if x_bottom < minimal:
        return CouplerClass.NO_SWAPPING

    return CouplerClass.VALID


def noisy_local_bounds(xi):
    """Return (Z_b, Z_t), the CH range of products of noisy local boxes.

    With e = 2 xi - 1, Z_b = (1 - e^2)/2 and Z_t = 1 - Z_b.

    Raises:
        nlswap.errors.ParameterRangeError: xi is outside [1/2, 1].
    """

    xi = as_exact(xi)
    if xi < HALF or xi > 1:
        raise ParameterRangeError(
            'xi must lie in [1/2, 1], got {}'.format(xi)
        )

    bias = xi * 2 - 1
    z_bottom = (ONE - bias * bias) / 2
    return z_bottom, ONE - z_bottom


def noisy_local_family(xi):
    """Return the 16 products L(alpha, beta) x L(gamma, delta) at
    noise level *xi*."""

    return [
        tensor(
            make_noisy_local_pair(alpha, beta, xi),
            make_noisy_local_pair(gamma, delta, xi),
        )
        for alpha, beta, gamma, delta in itertools.product(BITS, repeat=4)
    ]


def isotropic_for_noisy_floor(z_bottom):
    """Return the isotropic box whose noisy local boxes have CH floor
    *z_bottom*.

    Solves Z_b(xi) = z_bottom with xi >= 1/2.

    Raises:
        nlswap.errors.ParameterRangeError: z_bottom is outside [0, 1/2].
        nlswap.errors.UnrepresentableError: xi leaves Q(2^(1/4)).
    """

    z_bottom = as_exact(z_bottom)
    if z_bottom < 0 or z_bottom > HALF:
        raise ParameterRangeError(
            'a noisy local floor lies in [0, 1/2], got {}'.format(z_bottom)
        )

    bias = (ONE - z_bottom * 2).sqrt()
    return make_isotropic((ONE + bias) / 2)


class TheoryModel(object):
    """A theory whose genuine boxes have CH values in [X_b, X_t].

    Args:
        x_top: X_t in (1, 3/2].
        x_bottom: X_b < X_t.

    Raises:
        nlswap.errors.DomainError: X_t is outside (1, 3/2].
        nlswap.errors.DegenerateRangeError: X_b >= X_t.
    """

    __slots__ = ('_x_top', '_x_bottom')

    def __init__(self, x_top, x_bottom):
        x_top = _check_x_top(x_top)
        x_bottom = as_exact(x_bottom)
        if x_bottom >= x_top:
            raise DegenerateRangeError(
                'X_b must be < X_t, got X_t={}, X_b={}'.format(
                    x_top, x_bottom
                )
            )

        self._x_top = x_top
        self._x_bottom = x_bottom

    @classmethod
    def with_perfect_coupler(cls, x_top):
        return cls(x_top, perfect_xb(x_top))

    @property
    def x_top(self):
        return self._x_top

    @property
    def x_bottom(self):
        return self._x_bottom

    @property
    def xi(self):
        """PR weight of the genuine non-local box, 2 xi - 1/2 = X_t."""
        return isotropic_with_ch(self._x_top)

    def genuine_nonlocal(self):
        return make_isotropic(self.xi)

    def genuine_local_family(self):
        return noisy_local_family(self.xi)

    def genuine_boxes(self):
        """Return the genuine non-local box followed by the 16 genuine
        local boxes."""

        return [self.genuine_nonlocal()] + self.genuine_local_family()

    def coupler(self):
        return make_coupler(self._x_top, self._x_bottom)

    @property
    def classification(self):
        return classify(self._x_top, self._x_bottom)

    def check_genuine_range(self):
        """Return True iff every genuine box has CH value in
        [X_b, X_t]."""

        return all(
            self._x_bottom <= value <= self._x_top
            for value in map(ch_value, self.genuine_boxes())
        )

    def __eq__(self, other):
        if not isinstance(other, TheoryModel):
            return NotImplemented

        return (self._x_top, self._x_bottom) == (
            other._x_top,
            other._x_bottom,
        )

    def __hash__(self):
        return hash((self._x_top, self._x_bottom))

    def __repr__(self):
        return 'TheoryModel(x_top={}, x_bottom={})'.format(
            self._x_top, self._x_bottom
        )


def perfect_coupler_consistent(x_top):
    """Check that the perfect coupler acts consistently on the model.

    The perfect coupler stays within [0, 1] on the genuine boxes iff
    its X_b does not exceed the floor Z_b of the noisy local boxes.

    Raises:
        nlswap.errors.DomainError: X_t is outside (1, 3/2].
    """

    model = TheoryModel.with_perfect_coupler(x_top)
    z_bottom, __ = noisy_local_bounds(model.xi)

    return model.x_bottom <= z_bottom and coupler_valid_on(
        model.coupler(), model.genuine_boxes()
    )


def tsirelson_emergence_one():
    """The perfect coupler of the PR box stops swapping at B_Q, and the
    coupler (B_Q, 0) lies on the minimal boundary."""

    threshold = swap_threshold(genuine_box_coupler())
    return threshold == TSIRELSON_BOUND and minimal_xb(TSIRELSON_BOUND) == 0


def tsirelson_emergence_two():
    """The noisy local boxes with CH floor 1/4 come from the Tsirelson
    box."""

    box = isotropic_for_noisy_floor(Rational(1, 4))
    return ch_value(box) == TSIRELSON_BOUND


def symmetric_theory_has_no_coupler(x_top):
    """Return True iff the symmetric theory X_b = 1 - X_t has no
    swapping coupler.

    Raises:
        nlswap.errors.DomainError: X_t is outside (1, 3/2).
    """

    x_top = _check_x_top(x_top)
    if x_top == _THREE_HALVES:
        raise DomainError('X_t must lie in (1, 3/2), got 3/2')

    return not classify(x_top, ONE - x_top).swaps


def is_post_quantum(x_top):
    """Return True iff X_t exceeds Tsirelson's bound.

    Exactly these theories keep the deterministic boxes as genuine
    boxes (minimal_xb(X_t) < 0).
    """

    return as_exact(x_top) > TSIRELSON_BOUND


def keeps_deterministic_boxes(x_top):
    return minimal_xb(x_top) < ZERO
