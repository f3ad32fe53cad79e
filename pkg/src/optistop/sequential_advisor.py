"""Sequential search advice: is one more sample worth its cost?

A running search keeps the best measured value seen so far.  Standardizing
it by the measured spread gives a score z, and the expected improvement
from exactly one more draw is

    value = a * degradation * (pdf(z) - z * upper_tail(z)),

a rapidly decreasing function of z.  The verdict is to sample again exactly
while that value exceeds the per-item cost (ties stop: indifference plus
any unmodeled friction favors stopping).  The rule is myopic by design; it
prices a single extra sample, not a whole continuation policy.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from ._normal import v_plus_np
from .noisy_selection import NoisyModel
from .planner import CostModel


class Recommendation(str, Enum):
    SAMPLE_MORE = "sample_more"
    STOP = "stop"


def v_plus(z):
    """Standardized expected improvement from one more draw, best-so-far z.

    Behaves like |z| far below zero and decays like the normal tail above;
    scale by spread times degradation to get worth units.
    """
    out = v_plus_np(z)
    return float(out) if np.ndim(z) == 0 else out


def one_more_value(model: NoisyModel, w0: float) -> float:
    """Worth-unit value of one extra sample when the best measures w0.

    w0 is in return coordinates (raw measurement minus the worth mean).
    """
    z0 = w0 / model.measured_spread
    return model.worth_spread * model.degradation * v_plus(z0)


@dataclass(frozen=True)
class SessionState:
    """A running sequential search: model, cost, and observations so far.

    Observations are stored in return coordinates (raw worth minus the
    model mean, subtracted at the recording boundary) and are append-only;
    record_observation returns a new state.
    """

    model: NoisyModel
    cost: CostModel
    observations: tuple[float, ...] = ()
    created: float = field(default_factory=time.time)
    updated: float = field(default_factory=time.time)

    @property
    def best_measured(self) -> float | None:
        return max(self.observations) if self.observations else None


def record_observation(
    session: SessionState, measured_worth: float, timestamp: float | None = None
) -> SessionState:
    """Append one raw measurement (worth scale) and return the new state."""
    value = float(measured_worth)
    if not math.isfinite(value):
        raise ValueError(f"measured worth must be finite, got {measured_worth!r}")
    stamp = time.time() if timestamp is None else float(timestamp)
    return replace(
        session,
        observations=session.observations + (value - session.model.worth_mean,),
        updated=stamp,
    )


@dataclass(frozen=True)
class Advice:
    z0: float | None
    v_plus: float | None
    value_of_one_more: float | None
    per_item_cost: float
    recommendation: Recommendation
    posterior_best_worth: float | None

    def to_dict(self) -> dict:
        return {
            "z0": self.z0,
            "v_plus": self.v_plus,
            "value_of_one_more": self.value_of_one_more,
            "cost": self.per_item_cost,
            "recommendation": self.recommendation.value,
            "posterior_best_worth": self.posterior_best_worth,
        }


def advise(session: SessionState) -> Advice:
    """Stop/continue verdict for the current best measurement.

    An empty session gets an unconditional sample-more verdict with the
    score fields absent: without a first draw there is nothing to keep.
    """
    model, cost = session.model, session.cost
    w0 = session.best_measured
    if w0 is None:
        return Advice(
            z0=None,
            v_plus=None,
            value_of_one_more=None,
            per_item_cost=cost.per_item_cost,
            recommendation=Recommendation.SAMPLE_MORE,
            posterior_best_worth=None,
        )
    z0 = w0 / model.measured_spread
    score = v_plus(z0)
    value = model.worth_spread * model.degradation * score
    verdict = (
        Recommendation.SAMPLE_MORE
        if value > cost.per_item_cost
        else Recommendation.STOP
    )
    return Advice(
        z0=z0,
        v_plus=score,
        value_of_one_more=value,
        per_item_cost=cost.per_item_cost,
        recommendation=verdict,
        posterior_best_worth=model.worth_mean + model.shrinkage * w0,
    )
