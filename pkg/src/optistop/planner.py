"""Sampling plans: how many items to measure before keeping the best.

Costs are linear with a twist: measuring is pointless when only one item
is drawn, so the cumulative cost is 0 at n = 1 and n*c from n = 2 on.
The optimal size picks the largest n whose marginal worth still exceeds
the per-item cost, cross-checked against a brute-force argmax of the gain
curve (ties resolve to the smaller n).  Fat-tailed worth with alpha <= 1
has no finite optimum at any cost; that verdict is issued analytically.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from . import order_stats
from .distributions import DistributionSpec, Pareto, StandardNormal
from .noisy_selection import NoisyModel
from .order_stats import DivergenceError

DEFAULT_N_MAX = 10_000


class HeuristicRangeWarning(UserWarning):
    """The closed-form sample-size shortcut was used outside its a >> c regime."""


@dataclass(frozen=True)
class CostModel:
    per_item_cost: float = 0.0

    def __post_init__(self):
        value = float(self.per_item_cost)
        if not math.isfinite(value) or value < 0:
            raise ValueError(f"per_item_cost must be finite and >= 0, got {value!r}")
        object.__setattr__(self, "per_item_cost", value)

    def to_dict(self) -> dict:
        return {"c": self.per_item_cost}

    @classmethod
    def from_dict(cls, data: dict) -> "CostModel":
        try:
            return cls(per_item_cost=data["c"])
        except KeyError as exc:
            raise ValueError(f"cost JSON is missing field {exc}") from None


class PlanRationale(str, Enum):
    MARGINAL_CRITERION = "MarginalCriterion"
    PICK_ONE_NO_MEASURE = "PickOneNoMeasure"
    DIVERGENT = "Divergent"


@dataclass(frozen=True)
class PlanResult:
    n_star: int
    expected_gain: float
    gain_curve: tuple[tuple[int, float], ...]
    marginals: tuple[tuple[int, float], ...]
    diverges: bool
    rationale: PlanRationale

    def to_dict(self) -> dict:
        gain = self.expected_gain
        return {
            "n_star": self.n_star,
            "expected_gain": gain if math.isfinite(gain) else None,
            "diverges": self.diverges,
            "rationale": self.rationale.value,
            "gain_curve": [[n, g] for n, g in self.gain_curve],
            "marginals": [[n, k] for n, k in self.marginals],
        }

    def to_json(self) -> str:
        import json

        return json.dumps(self.to_dict())


def cumulative_cost(cost: CostModel, n: int) -> float:
    """Total measuring cost for n items: zero for a single unmeasured pick."""
    if not float(n).is_integer() or n < 1:
        raise ValueError(f"sample size must be an integer >= 1, got {n!r}")
    return 0.0 if n == 1 else n * cost.per_item_cost


def gain(model: NoisyModel, cost: CostModel, n: int) -> float:
    """Expected net gain (worth units) of measuring n items under noise."""
    from .noisy_selection import expected_selected_worth

    return expected_selected_worth(model, n) - cumulative_cost(cost, n)


def ideal_gain(spec: DistributionSpec, cost: CostModel, n: int) -> float:
    """Expected net gain with perfect measurement of n draws from spec."""
    return order_stats.expected_max(spec, n) - cumulative_cost(cost, n)


@lru_cache(maxsize=64)
def _worth_curve(target, n_max: int) -> np.ndarray:
    """Expected best worth for n = 1..n_max (selected-by-measurement for
    noisy models, true maximum for ideal specs)."""
    if isinstance(target, NoisyModel):
        kappas = np.array(
            [order_stats.expected_max(StandardNormal(), n) for n in range(1, n_max + 1)]
        )
        curve = target.worth_mean + target.degradation * target.worth_spread * kappas
        curve[0] = target.worth_mean
        return curve
    return np.array([order_stats.expected_max(target, n) for n in range(1, n_max + 1)])


def optimal_sample_size(
    target: NoisyModel | DistributionSpec,
    cost: CostModel,
    n_max: int = DEFAULT_N_MAX,
) -> PlanResult:
    """Choose the sample size maximizing expected gain over 1..n_max.

    The marginal rule (largest n with marginal worth above the per-item
    cost, provided its gain beats the measure-nothing baseline) is always
    confirmed against the brute-force argmax; a disagreement means the
    marginal sequence was not monotone and raises RuntimeError.
    """
    if not float(n_max).is_integer() or n_max < 2:
        raise ValueError(f"n_max must be an integer >= 2, got {n_max!r}")
    n_max = int(n_max)
    c = cost.per_item_cost

    if isinstance(target, Pareto) and target.alpha <= 1.0:
        return PlanResult(
            n_star=n_max,
            expected_gain=math.inf,
            gain_curve=(),
            marginals=(),
            diverges=True,
            rationale=PlanRationale.DIVERGENT,
        )

    worth = _worth_curve(target, n_max)
    ns = np.arange(1, n_max + 1)
    gains = worth - np.where(ns == 1, 0.0, ns * c)
    marginals = np.diff(worth)  # k_n for n = 2..n_max

    curve = tuple(zip(ns.tolist(), gains.tolist()))
    marginal_pairs = tuple(zip(range(2, n_max + 1), marginals.tolist()))

    above = np.nonzero(marginals > c)[0]
    candidate = int(above[-1]) + 2 if above.size else 1

    if isinstance(target, Pareto) and candidate == n_max and marginals[-1] > c:
        # Marginals never fell below the cost inside the horizon; with a fat
        # tail that is the sample-forever verdict, not an optimum.
        return PlanResult(
            n_star=n_max,
            expected_gain=float(gains[-1]),
            gain_curve=curve,
            marginals=marginal_pairs,
            diverges=True,
            rationale=PlanRationale.DIVERGENT,
        )

    if candidate >= 2 and gains[candidate - 1] > gains[0]:
        n_star = candidate
        rationale = PlanRationale.MARGINAL_CRITERION
    else:
        n_star = 1
        rationale = PlanRationale.PICK_ONE_NO_MEASURE

    brute = int(np.argmax(gains)) + 1
    if brute != n_star:
        raise RuntimeError(
            f"marginal criterion chose n={n_star} but the gain curve peaks at "
            f"n={brute}; the marginal sequence is not monotone"
        )

    return PlanResult(
        n_star=n_star,
        expected_gain=float(gains[n_star - 1]),
        gain_curve=curve,
        marginals=marginal_pairs,
        diverges=False,
        rationale=rationale,
    )


@dataclass(frozen=True)
class UniformWidth:
    """Worth spread out evenly over an interval of the given width."""

    width: float


@dataclass(frozen=True)
class NormalSpread:
    """Normally distributed worth with the given standard deviation."""

    spread: float


def heuristic_sample_size(family: UniformWidth | NormalSpread, c: float) -> int:
    """Closed-form sample-size shortcut for cheap sampling (scale >> cost).

    Uniform worth of width a gives n ~ sqrt(a/c); normal worth of spread a
    gives n ~ a/c.  Outside a >= 100 c the shortcut is unreliable and a
    HeuristicRangeWarning is emitted.
    """
    if not c > 0:
        raise ValueError(f"per-item cost must be > 0, got {c!r}")
    if isinstance(family, UniformWidth):
        scale, estimate = family.width, math.sqrt(family.width / c)
    elif isinstance(family, NormalSpread):
        scale, estimate = family.spread, family.spread / c
    else:
        raise TypeError(f"unsupported heuristic family: {family!r}")
    if scale < 100.0 * c:
        warnings.warn(
            f"sample-size shortcut assumes scale >> cost; got scale={scale}, c={c}",
            HeuristicRangeWarning,
            stacklevel=2,
        )
    return max(1, round(estimate))


class ThreeVerdict(str, Enum):
    PICK_ONE_AT_RANDOM = "PickOneAtRandom"
    TRY_AT_LEAST_THREE = "TryAtLeastThree"


def three_vs_two_gap(model: NoisyModel, cost: CostModel) -> float:
    """Expected gain of trying three items over two.

    Equals half of (degraded two-sample improvement minus the cost of the
    second measurement); positive exactly when two beats one.
    """
    kappa2 = order_stats.expected_max(StandardNormal(), 2)
    edge2 = model.degradation * model.worth_spread * kappa2 - 2.0 * cost.per_item_cost
    return 0.5 * edge2


def rule_of_three(model: NoisyModel, cost: CostModel) -> ThreeVerdict:
    """Minimalist strategy: if measuring two items beats picking one at
    random, measuring three beats two as well, so try at least three; if
    even two does not pay, pick one at random and skip measuring."""
    if three_vs_two_gap(model, cost) > 0:
        return ThreeVerdict.TRY_AT_LEAST_THREE
    return ThreeVerdict.PICK_ONE_AT_RANDOM
