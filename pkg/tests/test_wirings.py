from fractions import Fraction
import itertools
import random

import pytest

import nlswap
from nlswap.boxes import BITS
from nlswap.wirings import (
    complement,
    constant_wirings,
    facet_index,
    is_extremal,
    is_mixture_of,
    is_valid,
    kind_histogram,
    strategy_pattern,
    vertex_pattern,
)

Kind = nlswap.WiringKind


@pytest.fixture(scope='module')
def wirings():
    return nlswap.enumerate_all_wirings()


def _random_ns_box(rng):
    vertices = nlswap.enumerate_ns_vertices()
    weights = [rng.randint(0, 9) for __ in vertices]
    weights[0] += 1
    total = sum(weights)

    return nlswap.combine([Fraction(w, total) for w in weights], vertices)


def test_positivity_facets():
    facets = nlswap.positivity_facets()
    box = nlswap.make_isotropic(Fraction(5, 8))

    assert len(facets) == 16
    for a, b, x, y in itertools.product(BITS, repeat=4):
        facet = facets[facet_index(a, b, x, y)]
        assert facet(box) == box.probability(a, b, x, y)


def test_and_wirings():
    ands = nlswap.and_wirings()

    assert len(ands) == 32
    assert all(w.kind is Kind.AND for w in ands)
    assert len({vertex_pattern(w) for w in ands}) == 32

    for direct, negated in zip(ands[:16], ands[16:]):
        assert complement(direct).functional == negated.functional
        assert complement(complement(direct)).functional == direct.functional


def test_pairwise_sum_census():
    assert nlswap.pairwise_sum_census() == (120, 56, 48)


def test_pairwise_sums():
    sums = nlswap.pairwise_sums()

    assert len(sums) == 48
    for wiring in sums:
        assert wiring.provenance.construction == 'pair-sum'
        assert set(vertex_pattern(wiring)) <= {0, Fraction(1, 2), 1}

    histogram = kind_histogram(sums)
    assert histogram[Kind.ONE_SIDED] == 8
    assert histogram[Kind.XOR] == 8
    assert histogram[Kind.SEQUENTIAL] == 32


def test_incompatible_facets_do_not_sum_to_a_wiring():
    facets = nlswap.positivity_facets()
    functional = facets[facet_index(1, 1, 0, 0)] + facets[
        facet_index(0, 0, 1, 1)
    ]

    # a = x xor 1, b = y xor 1 hits both entries
    assert functional(nlswap.make_deterministic(1, 1, 1, 1)) == 2
    assert not is_valid(functional)


def test_enumerate_all_wirings(wirings):
    assert len(wirings) == 82
    assert len({vertex_pattern(w) for w in wirings}) == 82

    histogram = kind_histogram(wirings)
    assert list(histogram.items()) == [
        (Kind.DETERMINISTIC, 2),
        (Kind.AND, 32),
        (Kind.ONE_SIDED, 8),
        (Kind.XOR, 8),
        (Kind.SEQUENTIAL, 32),
    ]

    constructions = [w.provenance.construction for w in wirings]
    assert constructions[:2] == ['constant', 'constant']
    assert constructions[-1] == 'pair-sum'


def test_wirings_are_valid_and_extremal(wirings):
    for wiring in wirings:
        assert is_valid(wiring)
        assert is_extremal(wiring)


def test_extremality():
    half = nlswap.deterministic_coupler() * Fraction(1, 2)

    assert is_valid(half)
    assert not is_extremal(half)
    assert is_mixture_of(half, constant_wirings())

    facet = nlswap.positivity_facets()[0]
    assert not is_mixture_of(facet, constant_wirings())


def test_classify_wiring():
    facets = nlswap.positivity_facets()

    assert nlswap.classify_wiring(nlswap.deterministic_coupler()) is (
        Kind.DETERMINISTIC
    )
    assert nlswap.classify_wiring(facets[5]) is Kind.AND

    # Alice's box outputs 0 on input 1
    one_sided = facets[facet_index(0, 0, 1, 0)] + facets[
        facet_index(0, 1, 1, 0)
    ]
    assert nlswap.classify_wiring(one_sided) is Kind.ONE_SIDED

    xor = facets[facet_index(0, 0, 1, 1)] + facets[facet_index(1, 1, 1, 1)]
    assert nlswap.classify_wiring(xor) is Kind.XOR

    sequential = facets[facet_index(0, 1, 0, 0)] + facets[
        facet_index(1, 1, 0, 1)
    ]
    assert nlswap.classify_wiring(sequential) is Kind.SEQUENTIAL


def test_unclassifiable_wiring():
    double = nlswap.positivity_facets()[3] * 2

    with pytest.raises(nlswap.UnclassifiableWiringError) as excinfo:
        nlswap.classify_wiring(double)

    assert excinfo.value.code == 'unclassifiable'


def test_strategies():
    strategies = nlswap.generate_strategies()

    assert len(strategies) == 82
    assert len({strategy_pattern(s) for s in strategies}) == 82
    assert [s.kind for s in strategies] == sorted(
        (s.kind for s in strategies), key=list(Kind).index
    )

    for strategy in strategies:
        assert strategy.describe()


def test_strategies_simulate_wirings(wirings):
    rng = random.Random(82)
    boxes = [_random_ns_box(rng) for __ in range(5)]
    boxes.append(nlswap.make_isotropic('1/2 + r^2/4'))

    for wiring in wirings:
        strategy = nlswap.strategy_for(wiring)
        assert strategy.kind is wiring.kind

        for box in boxes:
            assert strategy.simulate(box) == wiring.evaluate(box)


def test_complements_stay_in_the_set(wirings):
    patterns = {vertex_pattern(w) for w in wirings}

    for wiring in wirings:
        negated = complement(wiring)
        assert vertex_pattern(negated) in patterns
        assert negated.kind is wiring.kind


def test_wiring_record(wirings):
    record = wirings[0].to_dict()

    assert record['kind'] == 'Deterministic'
    assert record['provenance'] == {'construction': 'constant', 'indices': [0]}
    assert len(record['coefficients']) == 16
