"""nlswap package."""

# NOTE: The following imports are to be used by consumers of the nlswap
#   package; modules within the package itself should not use this
#   "front-door" module, but rather import using the fully-qualified
#   paths.

from .version import __version__  # NOQA
from .errors import *  # NOQA
from .exact import (  # NOQA
    as_exact,
    ExactScalar,
    HALF,
    INV_SQRT2,
    ONE,
    parse_scalar,
    ROOT,
    SQRT2,
    TSIRELSON_BOUND,
    ZERO,
)
from .boxes import (  # NOQA
    BipartiteBox,
    BoxKind,
    BoxLabel,
    combine,
    condition_on_alice,
    deterministic_boxes,
    enumerate_ns_vertices,
    make_anti_pr,
    make_deterministic,
    make_isotropic,
    make_maximally_mixed,
    make_noisy_local_pair,
    make_pr,
    make_pr_variant,
    make_single_deterministic,
    pr_variants,
    SinglePartyBox,
    tensor,
    verify_box,
)
from .functionals import (  # NOQA
    ch_functional,
    ch_value,
    Coupler,
    coupler_valid_on,
    deterministic_coupler,
    genuine_box_coupler,
    LinearFunctional,
    make_coupler,
)
from .polytope import (  # NOQA
    convex_decomposition,
    is_local,
    is_ns_vertex,
    ns_vertices_by_facets,
)
from .swap import (  # NOQA
    approximate_swap_threshold,
    coupler_action,
    decompose_isotropic,
    IsotropicDecomposition,
    success_probability,
    swap,
    swap_threshold,
    SwapOutcome,
    verify_coupler_nonsignalling,
)
from .models import (  # NOQA
    classify,
    CouplerClass,
    isotropic_for_noisy_floor,
    minimal_xb,
    noisy_local_bounds,
    perfect_coupler_consistent,
    perfect_xb,
    symmetric_theory_has_no_coupler,
    TheoryModel,
    tsirelson_emergence_one,
    tsirelson_emergence_two,
)
from .wirings import (  # NOQA
    and_wirings,
    classify_wiring,
    enumerate_all_wirings,
    generate_strategies,
    pairwise_sum_census,
    pairwise_sums,
    positivity_facets,
    strategy_for,
    Wiring,
    WiringKind,
)
