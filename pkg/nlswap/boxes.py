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

"""Binary-input, binary-output boxes.

A bipartite box is stored as 16 probabilities P(ab|xy) in (a, b, x, y)
row-major order, i.e. entry ``8a + 4b + 2x + y``. Linear functionals in
``nlswap.functionals`` use the same layout.
"""

import collections
import enum
import functools
import itertools

from .errors import (
    ParameterRangeError,
    UndefinedConditionalError,
)
from .exact import as_exact, HALF, ONE, Rational, ZERO

BITS = (0, 1)

ENTRIES = tuple(itertools.product(BITS, repeat=4))
"""All (a, b, x, y) tuples, in table order."""


def index(a, b, x, y):
    """Return the table position of P(ab|xy)."""
    return 8 * a + 4 * b + 2 * x + y


def _check_bit(name, value):
    if not isinstance(value, int):
        raise TypeError('{} must be an int'.format(name))

    if value not in BITS:
        raise ValueError('{} must be 0 or 1'.format(name))


def _check_weight(name, value):
    value = as_exact(value)
    if value < 0 or value > 1:
        raise ParameterRangeError(
            '{} must lie in [0, 1], got {}'.format(name, value)
        )

    return value


class BoxKind(enum.Enum):
    DETERMINISTIC = 'Deterministic'
    PR_VARIANT = 'PR-variant'
    ANTI_PR = 'AntiPR'
    ISOTROPIC = 'Isotropic'
    NOISY_LOCAL = 'NoisyLocal'
    MAXIMALLY_MIXED = 'MaximallyMixed'
    CUSTOM = 'Custom'


class BoxLabel(collections.namedtuple('BoxLabel', 'kind params')):
    """Provenance metadata attached to a box.

    Labels never take part in equality; two boxes with the same table
    are the same box.

    Attributes:
        kind (BoxKind): The constructor family.
        params (tuple): Sorted (name, value) pairs; values are ints
            (bits) or ExactScalar weights.
    """

    __slots__ = ()

    @classmethod
    def of(cls, kind, **params):
        return cls(kind, tuple(sorted(params.items())))

    def to_dict(self):
        params = {}
        for name, value in self.params:
            params[name] = value if isinstance(value, int) else str(value)

        return {'kind': self.kind.value, 'params': params}


CUSTOM = BoxLabel.of(BoxKind.CUSTOM)


class VerificationReport(
    collections.namedtuple(
        'VerificationReport', 'nonneg normalized nonsignalling'
    )
):
    """Outcome of ``verify_box()``; truthy iff all three checks pass."""

    __slots__ = ()

    @property
    def valid(self):
        return self.nonneg and self.normalized and self.nonsignalling

    def __bool__(self):
        return self.valid


class BipartiteBox(object):
    """The joint probabilities P(ab|xy) of a two-party box.

    The table is not required to satisfy the box invariants, so that
    signalling or unnormalized tables can be represented and then
    examined with ``verify_box()``. The ``make_*`` constructors always
    produce valid boxes.

    Args:
        table (iterable): 16 values (ExactScalar, int, Fraction or
            expression strings) in (a, b, x, y) row-major order.
        label (BoxLabel): Optional provenance metadata.
    """

    __slots__ = ('_p', '_label')

    def __init__(self, table, label=None):
        entries = tuple(as_exact(v) for v in table)
        if len(entries) != 16:
            raise ValueError(
                'a bipartite box has 16 entries, got {}'.format(len(entries))
            )

        self._p = entries
        self._label = label if label is not None else CUSTOM

    @classmethod
    def from_function(cls, func, label=None):
        """Build a table from ``func(a, b, x, y)``."""
        return cls((func(*e) for e in ENTRIES), label)

    @property
    def table(self):
        return self._p

    @property
    def label(self):
        return self._label

    def probability(self, a, b, x, y):
        return self._p[index(a, b, x, y)]

    def with_label(self, label):
        return BipartiteBox(self._p, label)

    def alice_probability(self, a, x, y=0):
        """Return P(a|x), read off with Bob's input fixed to *y*."""
        return self._p[index(a, 0, x, y)] + self._p[index(a, 1, x, y)]

    def bob_probability(self, b, y, x=0):
        """Return P(b|y), read off with Alice's input fixed to *x*."""
        return self._p[index(0, b, x, y)] + self._p[index(1, b, x, y)]

    def alice_marginal(self):
        return SinglePartyBox.from_function(
            lambda a, x: self.alice_probability(a, x)
        )

    def bob_marginal(self):
        return SinglePartyBox.from_function(
            lambda b, y: self.bob_probability(b, y)
        )

    # ----------------------------------------------------------------
    # Linear structure, so that mixtures read like the formulas
    # ----------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, BipartiteBox):
            return NotImplemented

        return BipartiteBox(p + q for p, q in zip(self._p, other._p))

    def __sub__(self, other):
        if not isinstance(other, BipartiteBox):
            return NotImplemented

        return BipartiteBox(p - q for p, q in zip(self._p, other._p))

    def __mul__(self, factor):
        factor = as_exact(factor)
        return BipartiteBox(p * factor for p in self._p)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BipartiteBox):
            return NotImplemented

        return self._p == other._p

    def __hash__(self):
        return hash(self._p)

    def __repr__(self):
        return 'BipartiteBox({}, [{}])'.format(
            self._label.kind.value, ', '.join(str(p) for p in self._p)
        )

    def to_dict(self):
        """Return the JSON box format (table always present)."""

        record = self._label.to_dict()
        record['table'] = [p.serialize() for p in self._p]
        return record

    @classmethod
    def from_dict(cls, record):
        try:
            table = record['table']
        except (KeyError, TypeError):
            raise ValueError('box record must have a "table" entry')

        label = CUSTOM
        kind = record.get('kind')
        if kind is not None:
            label = BoxLabel(BoxKind(kind), tuple(
                sorted((record.get('params') or {}).items())
            ))

        return cls(table, label)


class SinglePartyBox(object):
    """Probabilities P(b|y) of a one-party box, stored in (b, y) order.

    Args:
        table (iterable): 4 values for (b, y) = 00, 01, 10, 11.
    """

    __slots__ = ('_q',)

    def __init__(self, table):
        entries = tuple(as_exact(v) for v in table)
        if len(entries) != 4:
            raise ValueError(
                'a single-party box has 4 entries, got {}'.format(
                    len(entries)
                )
            )

        self._q = entries

    @classmethod
    def from_function(cls, func):
        return cls(func(b, y) for b, y in itertools.product(BITS, BITS))

    @property
    def table(self):
        return self._q

    def probability(self, b, y):
        return self._q[2 * b + y]

    def is_valid(self):
        if any(q < 0 for q in self._q):
            return False

        return all(
            self.probability(0, y) + self.probability(1, y) == 1 for y in BITS
        )

    def __add__(self, other):
        if not isinstance(other, SinglePartyBox):
            return NotImplemented

        return SinglePartyBox(p + q for p, q in zip(self._q, other._q))

    def __mul__(self, factor):
        factor = as_exact(factor)
        return SinglePartyBox(q * factor for q in self._q)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SinglePartyBox):
            return NotImplemented

        return self._q == other._q

    def __hash__(self):
        return hash(self._q)

    def __repr__(self):
        values = ', '.join(str(q) for q in self._q)
        return 'SinglePartyBox([{}])'.format(values)

    def to_dict(self):
        return {'table': [q.serialize() for q in self._q]}


# --------------------------------------------------------------------
# Constructors
# --------------------------------------------------------------------


def make_deterministic(alpha, beta, gamma, delta):
    """Return the local box with a = alpha*x + beta, b = gamma*y + delta.

    Args:
        alpha, beta, gamma, delta (int): Bits parameterizing the two
            response functions (addition is modulo 2).
    """

    for name, value in zip(
        ('alpha', 'beta', 'gamma', 'delta'), (alpha, beta, gamma, delta)
    ):
        _check_bit(name, value)

    def entry(a, b, x, y):
        hit = a == (alpha * x) ^ beta and b == (gamma * y) ^ delta
        return 1 if hit else 0

    label = BoxLabel.of(
        BoxKind.DETERMINISTIC, alpha=alpha, beta=beta, gamma=gamma, delta=delta
    )
    return BipartiteBox.from_function(entry, label)


def make_pr_variant(alpha, beta, gamma):
    """Return the extremal box with a + b = xy + alpha*x + beta*y + gamma.

    (0, 0, 0) is the PR box and (0, 0, 1) the anti-PR box.
    """

    for name, value in zip(('alpha', 'beta', 'gamma'), (alpha, beta, gamma)):
        _check_bit(name, value)

    def entry(a, b, x, y):
        parity = (x * y) ^ (alpha * x) ^ (beta * y) ^ gamma
        return HALF if a ^ b == parity else ZERO

    if (alpha, beta, gamma) == (0, 0, 1):
        label = BoxLabel.of(BoxKind.ANTI_PR)
    else:
        label = BoxLabel.of(
            BoxKind.PR_VARIANT, alpha=alpha, beta=beta, gamma=gamma
        )

    return BipartiteBox.from_function(entry, label)


def make_pr():
    return make_pr_variant(0, 0, 0)


def make_anti_pr():
    return make_pr_variant(0, 0, 1)


def make_maximally_mixed():
    quarter = Rational(1, 4)
    return BipartiteBox(
        [quarter] * 16, BoxLabel.of(BoxKind.MAXIMALLY_MIXED)
    )


def make_isotropic(xi):
    """Return xi * PR + (1 - xi) * anti-PR.

    Its CH value is 2*xi - 1/2.

    Args:
        xi (ExactScalar): PR weight in [0, 1]; may be irrational.

    Raises:
        nlswap.errors.ParameterRangeError: xi is outside [0, 1].
    """

    xi = _check_weight('xi', xi)
    box = make_pr() * xi + make_anti_pr() * (ONE - xi)
    return box.with_label(BoxLabel.of(BoxKind.ISOTROPIC, xi=xi))


def make_single_deterministic(alpha, beta):
    """Return the one-party box with b = alpha*y + beta."""

    _check_bit('alpha', alpha)
    _check_bit('beta', beta)
    return SinglePartyBox.from_function(
        lambda b, y: 1 if b == (alpha * y) ^ beta else 0
    )


def make_noisy_local_pair(alpha, beta, xi):
    """Return xi * L(alpha, beta) + (1 - xi) * L(alpha, beta + 1).

    These are the noisy single-party boxes obtained by conditioning an
    isotropic box on the other party's input and output.

    Raises:
        nlswap.errors.ParameterRangeError: xi is outside [0, 1].
    """

    xi = _check_weight('xi', xi)
    return (
        make_single_deterministic(alpha, beta) * xi
        + make_single_deterministic(alpha, beta ^ 1) * (ONE - xi)
    )


def tensor(alice, bob):
    """Return the product box P(ab|xy) = P_A(a|x) P_B(b|y)."""

    if not (
        isinstance(alice, SinglePartyBox) and isinstance(bob, SinglePartyBox)
    ):
        raise TypeError('tensor() takes two SinglePartyBox instances')

    return BipartiteBox.from_function(
        lambda a, b, x, y: alice.probability(a, x) * bob.probability(b, y)
    )


def condition_on_alice(box, x, a):
    """Return Bob's box P(b|y, a, x) after Alice inputs x and sees a.

    Args:
        box (BipartiteBox): The shared box.
        x (int): Alice's input.
        a (int): Alice's output.

    Raises:
        nlswap.errors.UndefinedConditionalError: P(a|x) is zero.
    """

    _check_bit('x', x)
    _check_bit('a', a)

    marginals = [box.alice_probability(a, x, y) for y in BITS]
    if any(not m for m in marginals):
        raise UndefinedConditionalError(
            'P(a={}|x={}) is zero; the conditional box is undefined'.format(
                a, x
            )
        )

    return SinglePartyBox.from_function(
        lambda b, y: box.probability(a, b, x, y) / marginals[y]
    )


def verify_box(box):
    """Check positivity, normalization and no-signalling exactly.

    Never raises for an invalid table; the answer is in the report.

    Returns:
        VerificationReport: One flag per invariant family.
    """

    nonneg = all(p.sign() >= 0 for p in box.table)

    normalized = all(
        sum((box.probability(a, b, x, y) for a in BITS for b in BITS), ZERO)
        == ONE
        for x in BITS
        for y in BITS
    )

    nonsignalling = all(
        box.alice_probability(a, x, 0) == box.alice_probability(a, x, 1)
        for a in BITS
        for x in BITS
    ) and all(
        box.bob_probability(b, y, 0) == box.bob_probability(b, y, 1)
        for b in BITS
        for y in BITS
    )

    return VerificationReport(nonneg, normalized, nonsignalling)


def combine(weights, boxes):
    """Return the weighted sum of boxes (a convex mixture if the
    weights are a probability vector)."""

    total = None
    for weight, box in zip(weights, boxes):
        term = box * weight
        total = term if total is None else total + term

    if total is None:
        raise ValueError('combine() needs at least one box')

    return total


@functools.lru_cache(maxsize=None)
def deterministic_boxes():
    """Return the 16 local deterministic boxes, in parameter order."""
    return tuple(
        make_deterministic(*params)
        for params in itertools.product(BITS, repeat=4)
    )


@functools.lru_cache(maxsize=None)
def pr_variants():
    """Return the 8 PR-type boxes, in parameter order."""
    return tuple(
        make_pr_variant(*params)
        for params in itertools.product(BITS, repeat=3)
    )


def enumerate_ns_vertices():
    """Return the 24 vertices of the non-signalling polytope.

    The 16 deterministic boxes come first, then the 8 PR variants. The
    list is checked against a brute-force enumeration from the
    positivity facets by ``nlswap.polytope.ns_vertices_by_facets()``.
    """

    return list(deterministic_boxes() + pr_variants())
