"""optistop: how many to sample, when to stop, and what noise costs you.

A decision engine for "sample n items at a cost, keep the best" problems:
expected maxima of i.i.d. draws, optimal sample sizes under per-item
costs, selection degradation under measurement error, and a sequential
one-more-sample rule, each cross-checked by a reproducible Monte-Carlo
oracle.  Exposed as a library, a CLI (``optistop``), and a JSON/HTTP
session service.
"""

from .distributions import (
    DistributionError,
    DistributionSpec,
    Normal,
    Pareto,
    StandardNormal,
    Uniform,
    cdf,
    pdf,
    quantile,
)
from .mc_oracle import (
    McEstimate,
    OneMoreLookahead,
    PlannedN,
    simulate_expected_max,
    simulate_one_more,
    simulate_policy,
    simulate_selection,
)
from .noisy_selection import (
    DegenerateModelError,
    NoisyModel,
    conditional_return_density,
    degradation_factor,
    expected_selected_worth,
    measured_density,
    posterior_mean_return,
)
from .order_stats import (
    DivergenceError,
    RankitTable,
    affine_expected_max,
    expected_max,
    marginal_worth,
    max_density,
    order_statistic_cdf,
    vdw_approx_max,
)
from .planner import (
    CostModel,
    NormalSpread,
    PlanRationale,
    PlanResult,
    ThreeVerdict,
    UniformWidth,
    cumulative_cost,
    gain,
    heuristic_sample_size,
    ideal_gain,
    optimal_sample_size,
    rule_of_three,
    three_vs_two_gap,
)
from .sequential_advisor import (
    Advice,
    Recommendation,
    SessionState,
    advise,
    one_more_value,
    record_observation,
    v_plus,
)

__version__ = "0.1.0"

__all__ = [
    "Advice",
    "CostModel",
    "DegenerateModelError",
    "DistributionError",
    "DistributionSpec",
    "DivergenceError",
    "McEstimate",
    "NoisyModel",
    "Normal",
    "NormalSpread",
    "OneMoreLookahead",
    "Pareto",
    "PlanRationale",
    "PlanResult",
    "PlannedN",
    "RankitTable",
    "Recommendation",
    "SessionState",
    "StandardNormal",
    "ThreeVerdict",
    "Uniform",
    "UniformWidth",
    "advise",
    "affine_expected_max",
    "cdf",
    "conditional_return_density",
    "cumulative_cost",
    "degradation_factor",
    "expected_max",
    "expected_selected_worth",
    "gain",
    "heuristic_sample_size",
    "ideal_gain",
    "marginal_worth",
    "max_density",
    "measured_density",
    "one_more_value",
    "optimal_sample_size",
    "order_statistic_cdf",
    "pdf",
    "posterior_mean_return",
    "quantile",
    "record_observation",
    "rule_of_three",
    "simulate_expected_max",
    "simulate_one_more",
    "simulate_policy",
    "simulate_selection",
    "three_vs_two_gap",
    "v_plus",
    "vdw_approx_max",
]
