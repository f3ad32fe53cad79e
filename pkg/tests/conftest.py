"""Shared helpers for the test suite."""

import math

import numpy as np

from optistop.distributions import StandardNormal, Uniform
from optistop.noisy_selection import NoisyModel
from optistop.order_stats import expected_max
from optistop.planner import CostModel


def random_planner_configs(count, seed):
    """Random (target, cost) pairs whose cost sits strictly between the 50th
    and 2nd marginal worth, so the optimal size lands inside 2..50 (or at 1
    when the free first pick still wins)."""
    kappa2 = expected_max(StandardNormal(), 2)
    kappa_50_gap = expected_max(StandardNormal(), 50) - expected_max(StandardNormal(), 49)
    rng = np.random.default_rng(seed)
    configs = []
    while len(configs) < count:
        kind = rng.integers(0, 3)
        if kind == 0:
            width = float(rng.uniform(0.5, 20.0))
            target = Uniform(0.0, width)
            k2, k50 = width / 6.0, width / (50 * 51)
        elif kind == 1:
            spread = float(rng.uniform(0.5, 5.0))
            target = NoisyModel(worth_mean=0.0, worth_spread=spread, error_spread=0.0)
            k2, k50 = spread * kappa2, spread * kappa_50_gap
        else:
            a = float(rng.uniform(0.5, 5.0))
            b = float(rng.uniform(0.0, 2.0) * a)
            target = NoisyModel(
                worth_mean=float(rng.normal(0, 5)), worth_spread=a, error_spread=b
            )
            eta_a = a * a / math.hypot(a, b)
            k2, k50 = eta_a * kappa2, eta_a * kappa_50_gap
        c = float(rng.uniform(k50 * 1.0001, k2 * 0.9999))
        configs.append((target, CostModel(c)))
    return configs
