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

"""Non-locality swapping with a coupler.

Alice shares boxAB = P(a b1|x y1) with Bob, and Bob shares
boxBC = P(b2 c|y2 z) with Charlie. Bob applies a coupler to his two
halves and announces the output bit b'. The swap engine computes the
probability of b' = 0 and the boxes Alice and Charlie are left with in
either case.
"""

import collections
import math

from .boxes import (
    BipartiteBox,
    make_anti_pr,
    make_pr,
    tensor,
    verify_box,
)
from .errors import (
    DegenerateSwapError,
    DomainError,
    InvalidBoxError,
    NotIsotropicError,
    ParameterRangeError,
)
from .exact import HALF, ONE
from .functionals import ch_value, deterministic_coupler


class IsotropicDecomposition(
    collections.namedtuple('IsotropicDecomposition', 'mu')
):
    """A box written as mu * PR + (1 - mu) * anti-PR.

    Attributes:
        mu (ExactScalar): Weight on the PR box, in [0, 1].
    """

    __slots__ = ()

    def reconstruct(self):
        return make_pr() * self.mu + make_anti_pr() * (ONE - self.mu)

    @property
    def correlation(self):
        """2*mu - 1, the bias of a + b = xy."""
        return self.mu * 2 - 1


class SwapOutcome(
    collections.namedtuple(
        'SwapOutcome',
        'p_success success_box failure_box ch_success ch_failure',
    )
):
    """Result of ``swap()``.

    Attributes:
        p_success (ExactScalar): P(b' = 0).
        success_box (BipartiteBox): P_S(ac|xz), Alice and Charlie's box
            when b' = 0.
        failure_box (BipartiteBox): P_f(ac|xz), their box when b' = 1.
        ch_success (ExactScalar): CH value of the success box.
        ch_failure (ExactScalar): CH value of the failure box.
    """

    __slots__ = ()

    def mixture(self):
        """Return P(b'=0) P_S + P(b'=1) P_f, which must not depend on
        what Bob did."""

        return (
            self.success_box * self.p_success
            + self.failure_box * (ONE - self.p_success)
        )

    def to_dict(self):
        return {
            'p_success': self.p_success.serialize(),
            'ch_success': self.ch_success.serialize(),
            'ch_failure': self.ch_failure.serialize(),
            'success_box': self.success_box.to_dict(),
            'failure_box': self.failure_box.to_dict(),
        }


def _require_valid(name, box):
    if not verify_box(box):
        raise InvalidBoxError('{} is not a valid box'.format(name))


def bob_joint_box(box_ab, box_bc):
    """Return P(b1 b2|y1 y2) = P(b1|y1) P(b2|y2), the box Bob holds.

    Bob's first half is the second party of *box_ab* and his second
    half is the first party of *box_bc*.
    """

    return tensor(box_ab.bob_marginal(), box_bc.alice_marginal())


def success_probability(coupler, box_ab, box_bc):
    """Return P(b'=0), which depends only on Bob's local box.

    Defined for any pair of valid boxes. For two isotropic inputs it
    equals (1 - 2 X_b) / (2 (X_t - X_b)), whatever their noise.

    Raises:
        nlswap.errors.InvalidBoxError: An input box is not valid.
    """

    _require_valid('boxAB', box_ab)
    _require_valid('boxBC', box_bc)
    return coupler.evaluate(bob_joint_box(box_ab, box_bc))


def decompose_isotropic(box):
    """Write *box* as mu * PR + (1 - mu) * anti-PR.

    Raises:
        nlswap.errors.NotIsotropicError: The box is off the segment.
    """

    # PR puts 1/2 on P(00|00) and anti-PR puts 0 there
    mu = box.probability(0, 0, 0, 0) * 2
    decomposition = IsotropicDecomposition(mu)

    if mu < 0 or mu > 1 or decomposition.reconstruct() != box:
        raise NotIsotropicError(
            'box is not a mixture of the PR and anti-PR boxes'
        )

    return decomposition


def coupler_action(functional, box_ab, box_bc):
    """Apply a measurement functional to Bob's halves of two boxes.

    Entry (a, c, x, z) of the result is the unnormalized probability
    P(a, b'=0, c|x, z), obtained by applying *functional* to Bob's box
    conditioned on Alice's and Charlie's inputs and outputs:

        sum over b1 b2 y1 y2 of
            w(b1 b2 y1 y2) P_AB(a b1|x y1) P_BC(b2 c|y2 z)

    This is the general linear action of a coupler; ``swap()`` relies
    on its restriction to isotropic inputs instead.

    Returns:
        BipartiteBox: The unnormalized table over (a, c, x, z).
    """

    def entry(a, c, x, z):
        conditioned = BipartiteBox.from_function(
            lambda b1, b2, y1, y2: box_ab.probability(a, b1, x, y1)
            * box_bc.probability(b2, c, y2, z)
        )
        return functional.evaluate(conditioned)

    return BipartiteBox.from_function(entry)


def swap(coupler, box_ab, box_bc):
    """Swap non-locality from two isotropic boxes to Alice and Charlie.

    The coupler's action is known on the PR/anti-PR segment: under CH,
    PR.PR and anti.anti go to PR/2 and the mixed pairs go to anti-PR/2,
    while chi_D takes every pair to the maximally mixed box. For inputs
    with PR weights mu and nu this gives

        P_S = [(s - X_b) PR + (1 - s - X_b) anti-PR] / (1 - 2 X_b)

    with s = mu nu + (1 - mu)(1 - nu). The failure box is fixed by
    requiring that the two branches average to the product of the
    input marginals.

    Raises:
        nlswap.errors.NotIsotropicError: An input is off the segment.
        nlswap.errors.DegenerateSwapError: P(b'=0) is not strictly
            between 0 and 1 (for instance X_b >= 1/2), so a branch box
            is undefined.
    """

    mu = decompose_isotropic(box_ab).mu
    nu = decompose_isotropic(box_bc).mu

    p_success = success_probability(coupler, box_ab, box_bc)
    if p_success <= 0 or p_success >= 1:
        raise DegenerateSwapError(
            'P(b\'=0) = {} is outside (0, 1); a conditional box is '
            'undefined'.format(p_success)
        )

    x_bottom = coupler.x_bottom
    same = mu * nu + (ONE - mu) * (ONE - nu)
    scale = ONE / (ONE - x_bottom * 2)

    success_box = (
        make_pr() * ((same - x_bottom) * scale)
        + make_anti_pr() * ((ONE - same - x_bottom) * scale)
    )

    product = tensor(box_ab.alice_marginal(), box_bc.bob_marginal())
    failure_box = (product - success_box * p_success) * (
        ONE / (ONE - p_success)
    )

    return SwapOutcome(
        p_success,
        success_box,
        failure_box,
        ch_value(success_box),
        ch_value(failure_box),
    )


def verify_coupler_nonsignalling(coupler, box_ab, box_bc):
    """Check that Bob cannot signal to Alice and Charlie.

    The b' = 0 and b' = 1 branches are computed with the general
    ``coupler_action()`` (chi and chi_D - chi), and must sum to
    P(a|x) P(c|z). The swap outcome must also agree with the b' = 0
    branch.

    Returns:
        bool: True iff both checks hold exactly.
    """

    success = coupler_action(coupler.functional, box_ab, box_bc)
    failure = coupler_action(
        deterministic_coupler() - coupler.functional, box_ab, box_bc
    )
    product = tensor(box_ab.alice_marginal(), box_bc.bob_marginal())

    if success + failure != product:
        return False

    try:
        outcome = swap(coupler, box_ab, box_bc)
    except (NotIsotropicError, DegenerateSwapError):
        return True

    return outcome.success_box * outcome.p_success == success


def swap_threshold(coupler):
    """Return the input CH value at which swapping stops.

    Two isotropic inputs with CH value v are swapped to a box with
    CH value 1 when v = 1/2 + sqrt((1 - 2 X_b) / 2).

    Raises:
        nlswap.errors.DomainError: X_b >= 1/2, so there is no threshold.
        nlswap.errors.UnrepresentableError: The square root leaves
            Q(2^(1/4)); see ``approximate_swap_threshold()``.
    """

    radicand = (ONE - coupler.x_bottom * 2) / 2
    if radicand.sign() <= 0:
        raise DomainError(
            'no swap threshold for X_b = {}'.format(coupler.x_bottom)
        )

    return HALF + radicand.sqrt()


def approximate_swap_threshold(coupler):
    """Float version of ``swap_threshold()``, for plotting."""

    radicand = (1.0 - 2.0 * float(coupler.x_bottom)) / 2.0
    if radicand <= 0:
        raise DomainError(
            'no swap threshold for X_b = {}'.format(coupler.x_bottom)
        )

    return 0.5 + math.sqrt(radicand)


def isotropic_with_ch(value):
    """Return the weight xi of the isotropic box with CH value *value*.

    Raises:
        nlswap.errors.ParameterRangeError: value is outside [-1/2, 3/2].
    """

    xi = (value + HALF) / 2
    if xi < 0 or xi > 1:
        raise ParameterRangeError(
            'no isotropic box has CH value {}'.format(value)
        )

    return xi
