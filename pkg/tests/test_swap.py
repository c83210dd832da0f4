from fractions import Fraction
import itertools

import pytest

import nlswap
from nlswap.boxes import BITS
from nlswap.swap import bob_joint_box, isotropic_with_ch

HALF = Fraction(1, 2)

X_TOP_GRID = [1 + Fraction(k, 40) for k in range(1, 21)]


def _model_input(x_top):
    return nlswap.make_isotropic(isotropic_with_ch(x_top))


def _perfect(x_top):
    return nlswap.make_coupler(x_top, nlswap.perfect_xb(x_top))


def test_genuine_coupler_swaps_pr_to_pr():
    pr = nlswap.make_pr()
    outcome = nlswap.swap(nlswap.genuine_box_coupler(), pr, pr)

    assert outcome.p_success == Fraction(1, 3)
    assert outcome.success_box == pr
    assert outcome.ch_success == Fraction(3, 2)
    assert outcome.ch_failure == 0
    assert nlswap.verify_box(outcome.failure_box)


@pytest.mark.parametrize('x_top', X_TOP_GRID)
def test_perfect_coupler_succeeds_a_third_of_the_time(x_top):
    coupler = _perfect(x_top)
    box = _model_input(x_top)

    assert nlswap.success_probability(coupler, box, box) == Fraction(1, 3)

    # Independent of the noise of the inputs
    for xi in (HALF, Fraction(2, 3), 1):
        other = nlswap.make_isotropic(xi)
        assert nlswap.success_probability(coupler, other, box) == Fraction(
            1, 3
        )


@pytest.mark.parametrize('x_top', X_TOP_GRID)
def test_perfect_coupler_preserves_x_top(x_top):
    box = _model_input(x_top)
    outcome = nlswap.swap(_perfect(x_top), box, box)

    assert outcome.ch_success == x_top
    assert outcome.ch_failure == (Fraction(3, 2) - x_top) / 2

    weaker = nlswap.make_isotropic(isotropic_with_ch(x_top - Fraction(1, 80)))
    assert nlswap.swap(_perfect(x_top), weaker, weaker).ch_success < x_top


@pytest.mark.parametrize('k', range(1, 11))
def test_minimal_boundary_success_probability(k):
    x_top = 1 + Fraction(k, 20)
    coupler = nlswap.make_coupler(x_top, nlswap.minimal_xb(x_top))
    box = _model_input(x_top)

    expected = (x_top - HALF) / (x_top + HALF)
    assert nlswap.success_probability(coupler, box, box) == expected


def test_minimal_boundary_success_approaches_one_half():
    values = []
    for k in range(1, 11):
        x_top = 1 + Fraction(k, 20)
        coupler = nlswap.make_coupler(x_top, nlswap.minimal_xb(x_top))
        box = _model_input(x_top)
        values.append(nlswap.success_probability(coupler, box, box))

    assert values == sorted(values)
    assert values[-1] == HALF


def test_quantum_perfect_coupler_threshold():
    bound = nlswap.TSIRELSON_BOUND
    coupler = nlswap.make_coupler(bound, nlswap.perfect_xb(bound))

    threshold = nlswap.swap_threshold(coupler)
    assert threshold == HALF + nlswap.ROOT / 2  # 1/2 + 2^(-3/4)

    box = nlswap.make_isotropic(isotropic_with_ch(threshold))
    assert nlswap.swap(coupler, box, box).ch_success == 1


@pytest.mark.parametrize(
    'x_bottom,expected',
    [
        (0, nlswap.TSIRELSON_BOUND),
        (Fraction(1, 4), 1),
        (Fraction(1, 100), Fraction(6, 5)),
        (Fraction(3, 8), nlswap.as_exact('1/2 + r^2/4')),
    ],
)
def test_swap_threshold(x_bottom, expected):
    coupler = nlswap.make_coupler(Fraction(3, 2), x_bottom)
    threshold = nlswap.swap_threshold(coupler)

    assert threshold == expected
    assert (threshold - HALF) ** 2 == (1 - 2 * nlswap.as_exact(x_bottom)) / 2
    assert nlswap.approximate_swap_threshold(coupler) == pytest.approx(
        float(expected)
    )


def test_swap_threshold_errors():
    with pytest.raises(nlswap.DomainError):
        nlswap.swap_threshold(nlswap.make_coupler(1, HALF))

    with pytest.raises(nlswap.DomainError):
        nlswap.approximate_swap_threshold(nlswap.make_coupler(1, HALF))

    coupler = nlswap.make_coupler(Fraction(3, 2), Fraction(1, 3))
    with pytest.raises(nlswap.UnrepresentableError):
        nlswap.swap_threshold(coupler)

    assert nlswap.approximate_swap_threshold(coupler) == pytest.approx(
        0.5 + (1 / 6) ** 0.5
    )


def test_perturbed_coupler_misses_tsirelson():
    coupler = nlswap.make_coupler(Fraction(3, 2), Fraction(1, 100))
    assert nlswap.swap_threshold(coupler) != nlswap.TSIRELSON_BOUND


ORACLE_COUPLERS = [
    (Fraction(3, 2), 0),
    (Fraction(3, 2), Fraction(-1, 4)),
    (Fraction(7, 5), Fraction(1, 20)),
    (Fraction(13, 10), Fraction(1, 10)),
    (Fraction(6, 5), Fraction(3, 20)),
    (Fraction(6, 5), Fraction(1, 50)),
    (Fraction(11, 10), Fraction(1, 5)),
    (Fraction(5, 4), Fraction(1, 8)),
    (Fraction(5, 4), Fraction(3, 8)),  # Creates non-locality
    (Fraction(21, 20), Fraction(-1, 2)),  # Below the minimal boundary
]

ORACLE_XIS = [
    Fraction(0),
    Fraction(1, 4),
    HALF,
    Fraction(5, 6),
    Fraction(1),
]

# Equal noise, then neighbouring noise levels
ORACLE_PAIRS = list(zip(ORACLE_XIS, ORACLE_XIS)) + list(
    zip(ORACLE_XIS, ORACLE_XIS[1:])
)


def _bilinear_success_box(x_bottom, mu, nu):
    # CH takes PR.PR and anti.anti to PR/2 and the mixed pairs to
    # anti-PR/2; chi_D takes every pair to the maximally mixed box.
    pr = nlswap.make_pr()
    anti = nlswap.make_anti_pr()

    under_ch = (
        pr * (mu * nu / 2)
        + anti * (mu * (1 - nu) / 2)
        + anti * ((1 - mu) * nu / 2)
        + pr * ((1 - mu) * (1 - nu) / 2)
    )
    return under_ch - nlswap.make_maximally_mixed() * x_bottom


@pytest.mark.parametrize('x_top,x_bottom', ORACLE_COUPLERS)
def test_swap_matches_brute_force(x_top, x_bottom):
    coupler = nlswap.make_coupler(x_top, x_bottom)
    width = x_top - x_bottom

    for mu, nu in ORACLE_PAIRS:
        box_ab = nlswap.make_isotropic(mu)
        box_bc = nlswap.make_isotropic(nu)

        p_success = nlswap.success_probability(coupler, box_ab, box_bc)
        assert p_success == (1 - 2 * Fraction(x_bottom)) / (2 * width)

        outcome = nlswap.swap(coupler, box_ab, box_bc)
        joint = nlswap.coupler_action(coupler.functional, box_ab, box_bc)
        expected = _bilinear_success_box(x_bottom, mu, nu) * (1 / width)

        assert joint == expected
        assert outcome.success_box * outcome.p_success == joint

        bias = (2 * Fraction(mu) - 1) * (2 * Fraction(nu) - 1)
        assert outcome.ch_success == bias / (1 - 2 * Fraction(x_bottom)) + (
            HALF
        )
        assert outcome.ch_failure == (x_top - HALF - bias) / (2 * x_top - 1)

        assert outcome.mixture() == nlswap.make_maximally_mixed()
        assert nlswap.verify_coupler_nonsignalling(coupler, box_ab, box_bc)


def test_coupler_action_on_product_of_deterministic_marginals():
    # Bob's halves are deterministic, so the action reduces to chi
    # evaluated on Bob's product box, split by Alice's and Charlie's
    # outputs.
    box_ab = nlswap.make_deterministic(0, 1, 1, 0)
    box_bc = nlswap.make_deterministic(1, 0, 0, 1)
    coupler = nlswap.genuine_box_coupler()

    success = nlswap.coupler_action(coupler.functional, box_ab, box_bc)
    bob = bob_joint_box(box_ab, box_bc)
    product = nlswap.tensor(box_ab.alice_marginal(), box_bc.bob_marginal())

    assert success == product * coupler.evaluate(bob)
    assert nlswap.verify_coupler_nonsignalling(coupler, box_ab, box_bc)


FAILURE_COUPLERS = [(1 + Fraction(k, 20), k % 2) for k in range(1, 11)]


@pytest.mark.parametrize('x_top,kind', FAILURE_COUPLERS)
def test_failure_box_is_local(x_top, kind):
    perfect = nlswap.perfect_xb(x_top)
    minimal = nlswap.minimal_xb(x_top)
    x_bottom = perfect if kind == 0 else (perfect + minimal) / 2

    box = _model_input(x_top)
    outcome = nlswap.swap(nlswap.make_coupler(x_top, x_bottom), box, box)

    assert outcome.ch_failure == (Fraction(3, 2) - x_top) / 2
    assert 0 <= outcome.ch_failure <= 1
    assert nlswap.verify_box(outcome.failure_box)
    assert nlswap.is_local(outcome.failure_box)


def test_quantum_coupler_is_nonsignalling_on_noisy_inputs():
    bound = nlswap.TSIRELSON_BOUND
    coupler = nlswap.make_coupler(bound, nlswap.perfect_xb(bound))

    for k in range(10):
        box = nlswap.make_isotropic(HALF + Fraction(k, 18))
        assert nlswap.verify_coupler_nonsignalling(coupler, box, box)


def test_maximally_mixed_inputs_stay_mixed():
    mixed = nlswap.make_maximally_mixed()
    outcome = nlswap.swap(nlswap.genuine_box_coupler(), mixed, mixed)

    assert outcome.success_box == mixed
    assert outcome.failure_box == mixed
    assert outcome.ch_success == HALF


@pytest.mark.parametrize(
    'box,mu',
    [
        (nlswap.make_pr(), 1),
        (nlswap.make_anti_pr(), 0),
        (nlswap.make_maximally_mixed(), HALF),
        (nlswap.make_isotropic('1/2 + r^2/4'), '1/2 + r^2/4'),
    ],
)
def test_decompose_isotropic(box, mu):
    decomposition = nlswap.decompose_isotropic(box)

    assert decomposition.mu == nlswap.as_exact(mu)
    assert decomposition.reconstruct() == box


@pytest.mark.parametrize(
    'box',
    [
        nlswap.make_deterministic(0, 0, 0, 0),
        nlswap.make_pr_variant(1, 0, 0),
        nlswap.make_isotropic(Fraction(3, 4)) * 2,
    ],
)
def test_decompose_rejects_boxes_off_the_segment(box):
    with pytest.raises(nlswap.NotIsotropicError):
        nlswap.decompose_isotropic(box)


def test_swap_requires_isotropic_inputs():
    pr = nlswap.make_pr()
    deterministic = nlswap.make_deterministic(0, 0, 0, 0)

    with pytest.raises(nlswap.NotIsotropicError):
        nlswap.swap(nlswap.genuine_box_coupler(), pr, deterministic)

    # The success probability is defined for any valid pair
    p_success = nlswap.success_probability(
        nlswap.genuine_box_coupler(), pr, deterministic
    )
    assert 0 <= p_success <= 1


def test_success_probability_rejects_invalid_boxes():
    signalling = nlswap.BipartiteBox.from_function(
        lambda a, b, x, y: 1 if a == y and b == 0 else 0
    )

    with pytest.raises(nlswap.InvalidBoxError):
        nlswap.success_probability(
            nlswap.genuine_box_coupler(), signalling, nlswap.make_pr()
        )


@pytest.mark.parametrize(
    'x_top,x_bottom,p_success',
    [
        # X_b = 1/2 never outputs 0 on boxes with uniform marginals
        (1, HALF, 0),
        (Fraction(3, 2), Fraction(3, 4), Fraction(-1, 3)),
        (Fraction(5, 4), 1, -2),
    ],
)
def test_degenerate_swap(x_top, x_bottom, p_success):
    coupler = nlswap.make_coupler(x_top, x_bottom)
    pr = nlswap.make_pr()

    assert nlswap.success_probability(coupler, pr, pr) == p_success
    with pytest.raises(nlswap.DegenerateSwapError):
        nlswap.swap(coupler, pr, pr)

    # The linear action is still defined
    assert nlswap.verify_coupler_nonsignalling(coupler, pr, pr)


def test_outcome_record():
    pr = nlswap.make_pr()
    record = nlswap.swap(nlswap.genuine_box_coupler(), pr, pr).to_dict()

    assert nlswap.parse_scalar(record['p_success']) == Fraction(1, 3)
    assert nlswap.parse_scalar(record['ch_failure']) == 0
    assert len(record['success_box']['table']) == 16


def test_bob_box_is_product_of_marginals():
    box_ab = nlswap.make_isotropic(Fraction(2, 3))
    box_bc = nlswap.tensor(
        nlswap.make_noisy_local_pair(0, 1, Fraction(3, 4)),
        nlswap.make_noisy_local_pair(1, 1, Fraction(5, 6)),
    )
    bob = bob_joint_box(box_ab, box_bc)

    for b1, b2, y1, y2 in itertools.product(BITS, repeat=4):
        assert bob.probability(b1, b2, y1, y2) == box_ab.bob_probability(
            b1, y1
        ) * box_bc.alice_probability(b2, y2)
