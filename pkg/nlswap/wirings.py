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

"""Extremal consistent measurements on two non-signalling boxes.

A measurement on a pair of boxes held by one party is a linear
functional w with 0 <= w(P) <= 1 for every non-signalling P; w(P) is
the probability of outputting 0. Here the pair is described as one
joint box, with the a/x slot standing for the first box and the b/y
slot for the second.

The extremal measurements are built from the 16 positivity facets:
two constant measurements, 32 AND wirings (each facet and its
complement) and the valid sums of two facets, 82 in total. Every one
of them is reproduced by an explicit classical strategy.
"""

import collections
import enum
import functools
import itertools
import logging

from .boxes import BITS, enumerate_ns_vertices, index
from .errors import UnclassifiableWiringError
from .exact import ONE, ZERO
from .functionals import deterministic_coupler, LinearFunctional
from .polytope import convex_decomposition, rank

logger = logging.getLogger(__name__)


class WiringKind(enum.Enum):
    DETERMINISTIC = 'Deterministic'
    AND = 'And'
    ONE_SIDED = 'OneSided'
    XOR = 'Xor'
    SEQUENTIAL = 'Sequential'


_KIND_ORDER = tuple(WiringKind)

_CONSTRUCTIONS = ('constant', 'and', 'and-complement', 'pair-sum')


class Provenance(collections.namedtuple('Provenance', 'construction indices')):
    """How a wiring was built.

    Attributes:
        construction (str): One of 'constant', 'and', 'and-complement'
            or 'pair-sum'.
        indices (tuple): Facet indices used; for a constant wiring, the
            output bit.
    """

    __slots__ = ()

    def sort_key(self):
        return _CONSTRUCTIONS.index(self.construction), self.indices

    def to_dict(self):
        return {
            'construction': self.construction,
            'indices': list(self.indices),
        }


class Wiring(
    collections.namedtuple('Wiring', 'functional kind provenance')
):
    """A measurement on two boxes, with its kind and construction."""

    __slots__ = ()

    def evaluate(self, box):
        return self.functional.evaluate(box)

    def to_dict(self):
        record = {
            'kind': self.kind.value,
            'provenance': self.provenance.to_dict(),
        }
        record.update(self.functional.to_dict())
        return record


# --------------------------------------------------------------------
# Validity and extremality
# --------------------------------------------------------------------


def _functional(wiring):
    if isinstance(wiring, Wiring):
        return wiring.functional

    return wiring


def vertex_pattern(wiring):
    """Return the values on the 24 non-signalling vertices.

    Two measurements with the same pattern agree on every
    non-signalling box.
    """

    return _functional(wiring).pattern(enumerate_ns_vertices())


def is_valid(wiring):
    """Return True iff 0 <= w <= 1 on every non-signalling box."""

    return all(0 <= value <= 1 for value in vertex_pattern(wiring))


def is_extremal(wiring):
    """Return True iff *wiring* is a vertex of the measurement polytope.

    The vertices on which the measurement is 0 or 1 must span the same
    space as all 24 non-signalling vertices.
    """

    vertices = enumerate_ns_vertices()
    tight = [
        v.table
        for v, value in zip(vertices, vertex_pattern(wiring))
        if value == 0 or value == 1
    ]

    return rank(tight) == _vertex_rank()


@functools.lru_cache(maxsize=None)
def _vertex_rank():
    return rank(v.table for v in enumerate_ns_vertices())


def is_mixture_of(wiring, others):
    """Return True iff *wiring* agrees on all non-signalling boxes with a
    convex combination of *others*."""

    return (
        convex_decomposition(
            vertex_pattern(wiring), [vertex_pattern(w) for w in others]
        )
        is not None
    )


def complement(wiring):
    """Return the measurement with the outputs 0 and 1 exchanged."""

    functional = deterministic_coupler() - _functional(wiring)
    if not isinstance(wiring, Wiring):
        return functional

    return Wiring(functional, classify_wiring(functional), wiring.provenance)


# --------------------------------------------------------------------
# Construction from the positivity facets
# --------------------------------------------------------------------


def positivity_facets():
    """Return the 16 coordinate functionals P(ab|xy), in table order."""

    return [
        LinearFunctional(ONE if j == i else ZERO for j in range(16))
        for i in range(16)
    ]


def constant_wirings():
    """Return the two wirings that ignore the boxes.

    Outputting 0 always is chi_D; outputting 1 always is the zero
    functional.
    """

    return [
        Wiring(
            deterministic_coupler(),
            WiringKind.DETERMINISTIC,
            Provenance('constant', (0,)),
        ),
        Wiring(
            LinearFunctional([ZERO] * 16),
            WiringKind.DETERMINISTIC,
            Provenance('constant', (1,)),
        ),
    ]


def and_wirings():
    """Return the 16 AND wirings followed by their 16 complements.

    The facet P(ab|xy) is the wiring that inputs x and y and outputs 0
    iff the outputs are (a, b).
    """

    facets = positivity_facets()
    direct = [
        Wiring(facet, WiringKind.AND, Provenance('and', (j,)))
        for j, facet in enumerate(facets)
    ]
    complements = [
        Wiring(
            deterministic_coupler() - facet,
            WiringKind.AND,
            Provenance('and-complement', (j,)),
        )
        for j, facet in enumerate(facets)
    ]

    return direct + complements


def _facet_pair_sums():
    facets = positivity_facets()
    for j, k in itertools.combinations(range(16), 2):
        yield (j, k), facets[j] + facets[k]


def pairwise_sum_census():
    """Return (candidates, valid, distinct) for the sums of two facets.

    A sum is valid unless some deterministic box has both entries
    equal to 1. Distinct counts valid sums up to equality on
    non-signalling boxes.
    """

    candidates = 0
    valid = 0
    patterns = set()

    for __, functional in _facet_pair_sums():
        candidates += 1
        if is_valid(functional):
            valid += 1
            patterns.add(vertex_pattern(functional))

    return candidates, valid, len(patterns)


def pairwise_sums():
    """Return the 48 distinct valid sums of two AND wirings.

    For each behaviour the first pair (in facet order) is kept.
    """

    seen = set()
    survivors = []

    for (j, k), functional in _facet_pair_sums():
        if not is_valid(functional):
            continue

        pattern = vertex_pattern(functional)
        if pattern in seen:
            continue

        seen.add(pattern)
        survivors.append(
            Wiring(
                functional,
                classify_wiring(functional),
                Provenance('pair-sum', (j, k)),
            )
        )

    logger.debug('pairwise sums: %d distinct survivors', len(survivors))
    return survivors


@functools.lru_cache(maxsize=None)
def _all_wirings():
    candidates = constant_wirings() + and_wirings() + pairwise_sums()

    seen = set()
    wirings = []
    for wiring in sorted(candidates, key=lambda w: w.provenance.sort_key()):
        pattern = vertex_pattern(wiring)
        if pattern in seen:
            continue

        seen.add(pattern)
        wirings.append(wiring)

    logger.debug(
        'wirings: %d candidates, %d distinct', len(candidates), len(wirings)
    )
    return tuple(wirings)


def enumerate_all_wirings():
    """Return the 82 extremal measurements, ordered by provenance."""
    return list(_all_wirings())


def kind_histogram(wirings):
    """Return an ordered {WiringKind: count} mapping."""

    counts = collections.Counter(w.kind for w in wirings)
    return collections.OrderedDict(
        (kind, counts.get(kind, 0)) for kind in _KIND_ORDER
    )


# --------------------------------------------------------------------
# Classical strategies
# --------------------------------------------------------------------


class Strategy(collections.namedtuple('Strategy', 'kind params')):
    """A classical circuit around the two boxes.

    ``simulate()`` runs the circuit on a joint box and returns the
    probability that it outputs 0. The parameters are, by kind:

        Deterministic  output
        And            inputs (u, v), target outputs (alpha, beta),
                       negated
        OneSided       side, input u, target output gamma
        Xor            inputs (u, v), parity gamma
        Sequential     first side, input u, flip phi, targets (g0, g1)

    A sequential circuit feeds the first box input u, gives the other
    box the first output XOR phi, and outputs 0 iff the second output
    equals g0 or g1 according to the first output.
    """

    __slots__ = ()

    @classmethod
    def of(cls, kind, **params):
        return cls(kind, tuple(sorted(params.items())))

    def simulate(self, box):
        return _SIMULATORS[self.kind](box, **dict(self.params))

    def describe(self):
        params = dict(self.params)
        return _DESCRIPTIONS[self.kind].format(**params)


def _simulate_deterministic(box, output):
    return ONE if output == 0 else ZERO


def _simulate_and(box, u, v, alpha, beta, negated):
    hit = box.probability(alpha, beta, u, v)
    return ONE - hit if negated else hit


def _simulate_one_sided(box, side, u, gamma):
    # The unused box gets input 0
    if side == 0:
        return sum((box.probability(gamma, b, u, 0) for b in BITS), ZERO)

    return sum((box.probability(a, gamma, 0, u) for a in BITS), ZERO)


def _simulate_xor(box, u, v, gamma):
    return sum(
        (
            box.probability(a, b, u, v)
            for a in BITS
            for b in BITS
            if a ^ b == gamma
        ),
        ZERO,
    )


def _simulate_sequential(box, side, u, phi, g0, g1):
    targets = (g0, g1)
    total = ZERO

    for first in BITS:
        second = targets[first]
        if side == 0:
            total = total + box.probability(first, second, u, first ^ phi)
        else:
            total = total + box.probability(second, first, first ^ phi, u)

    return total


_SIMULATORS = {
    WiringKind.DETERMINISTIC: _simulate_deterministic,
    WiringKind.AND: _simulate_and,
    WiringKind.ONE_SIDED: _simulate_one_sided,
    WiringKind.XOR: _simulate_xor,
    WiringKind.SEQUENTIAL: _simulate_sequential,
}

_DESCRIPTIONS = {
    WiringKind.DETERMINISTIC: 'ignore both boxes and output {output}',
    WiringKind.AND: (
        'input ({u}, {v}); output {negated} iff the outputs are '
        '({alpha}, {beta})'
    ),
    WiringKind.ONE_SIDED: (
        'input {u} into box {side}; output 0 iff it outputs {gamma}'
    ),
    WiringKind.XOR: (
        'input ({u}, {v}); output 0 iff the outputs have parity {gamma}'
    ),
    WiringKind.SEQUENTIAL: (
        'input {u} into box {side}, feed its output xor {phi} to the '
        'other box; output 0 iff the second output is {g0} (first '
        'output 0) or {g1} (first output 1)'
    ),
}


def generate_strategies():
    """Return the 82 strategies, grouped by kind in kind order."""

    strategies = [
        Strategy.of(WiringKind.DETERMINISTIC, output=output)
        for output in BITS
    ]

    strategies.extend(
        Strategy.of(
            WiringKind.AND, u=u, v=v, alpha=alpha, beta=beta, negated=negated
        )
        for negated in BITS
        for alpha, beta, u, v in itertools.product(BITS, repeat=4)
    )

    strategies.extend(
        Strategy.of(WiringKind.ONE_SIDED, side=side, u=u, gamma=gamma)
        for side, u, gamma in itertools.product(BITS, repeat=3)
    )

    strategies.extend(
        Strategy.of(WiringKind.XOR, u=u, v=v, gamma=gamma)
        for u, v, gamma in itertools.product(BITS, repeat=3)
    )

    strategies.extend(
        Strategy.of(
            WiringKind.SEQUENTIAL, side=side, u=u, phi=phi, g0=g0, g1=g1
        )
        for side, u, phi, g0, g1 in itertools.product(BITS, repeat=5)
    )

    return strategies


def strategy_pattern(strategy):
    return tuple(strategy.simulate(v) for v in enumerate_ns_vertices())


@functools.lru_cache(maxsize=None)
def _strategies_by_pattern():
    table = {}
    for strategy in generate_strategies():
        table.setdefault(strategy_pattern(strategy), strategy)

    return table


def strategy_for(wiring):
    """Return the classical strategy that reproduces *wiring* on every
    non-signalling box.

    Raises:
        nlswap.errors.UnclassifiableWiringError: No strategy matches.
    """

    try:
        return _strategies_by_pattern()[vertex_pattern(wiring)]
    except KeyError:
        raise UnclassifiableWiringError(
            'no classical strategy reproduces {!r}'.format(
                _functional(wiring)
            )
        )


def classify_wiring(wiring):
    """Return the WiringKind of a wiring (or bare functional).

    Raises:
        nlswap.errors.UnclassifiableWiringError: No strategy matches.
    """

    return strategy_for(wiring).kind


def facet_index(a, b, x, y):
    """Return the position of the facet P(ab|xy) in
    ``positivity_facets()``."""

    return index(a, b, x, y)
