"""Monte-Carlo verification of the analytic results.

Each estimator is a pure function of (seed, trial index): trials map to
fixed 65536-trial blocks, blocks map to per-block partial sums, and the
final reduction runs in block order.  Worker threads only decide who
computes which block, so a given (seed, trials) pair returns bit-identical
estimates for any worker count, on either backend.

Estimates carry the sample standard error; Pareto targets with alpha <= 2
are flagged heavy_tail (their standard error is unreliable), and
alpha <= 1 additionally divergent_mean.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .backend import active_backend
from .distributions import (
    DistributionSpec,
    Normal,
    Pareto,
    StandardNormal,
    Uniform,
)
from .noisy_selection import NoisyModel
from .planner import CostModel

BLOCK_TRIALS = 1 << 16
MIN_TRIALS = 1_000


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    trials: int
    seed: int
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "std_error": self.std_error,
            "trials": self.trials,
            "seed": self.seed,
            "flags": list(self.flags),
        }


@dataclass(frozen=True)
class PlannedN:
    """Measure exactly n items, keep the one that measures best."""

    n: int


@dataclass(frozen=True)
class OneMoreLookahead:
    """Keep sampling while one more draw is worth its cost, up to max_n."""

    max_n: int


Policy = PlannedN | OneMoreLookahead


def _kernels(name: str):
    if name == "numba":
        from . import _mc_kernels as mod
    else:
        from . import _mc_numpy as mod
    return mod


def _seed_u64(seed: int) -> np.uint64:
    return np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF)


def _check_trials(trials: int) -> int:
    if not float(trials).is_integer() or trials < MIN_TRIALS:
        raise ValueError(f"trials must be an integer >= {MIN_TRIALS}, got {trials!r}")
    return int(trials)


def _check_n(n: int) -> int:
    if not float(n).is_integer() or n < 1:
        raise ValueError(f"sample size must be an integer >= 1, got {n!r}")
    return int(n)


def _reduce_blocks(block_fn, trials: int, workers: int) -> tuple[float, float]:
    """Run per-block partial sums and combine them in block order."""
    nblocks = (trials + BLOCK_TRIALS - 1) // BLOCK_TRIALS
    sums = np.empty(nblocks)
    sumsqs = np.empty(nblocks)

    def run(index: int) -> None:
        start = index * BLOCK_TRIALS
        count = min(BLOCK_TRIALS, trials - start)
        sums[index], sumsqs[index] = block_fn(start, count)

    if workers <= 1 or nblocks == 1:
        for index in range(nblocks):
            run(index)
    else:
        run(0)  # take any jit compilation on the calling thread
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(1, nblocks)))

    total = float(np.sum(sums))
    total_sq = float(np.sum(sumsqs))
    mean = total / trials
    variance = max(0.0, (total_sq - total * total / trials) / (trials - 1))
    return mean, sqrt(variance / trials)


def _encode(spec: DistributionSpec) -> tuple[int, float, float]:
    if isinstance(spec, StandardNormal):
        return 0, 0.0, 0.0
    if isinstance(spec, Normal):
        return 1, spec.mean, spec.spread
    if isinstance(spec, Uniform):
        return 2, spec.lo, spec.hi
    if isinstance(spec, Pareto):
        return 3, spec.alpha, 0.0
    raise TypeError(f"not a distribution spec: {spec!r}")


def _pareto_flags(spec: DistributionSpec) -> tuple[str, ...]:
    if not isinstance(spec, Pareto):
        return ()
    flags = []
    if spec.alpha <= 2.0:
        flags.append("heavy_tail")
    if spec.alpha <= 1.0:
        flags.append("divergent_mean")
        warnings.warn(
            f"Pareto alpha={spec.alpha} has an infinite expected maximum; "
            "the Monte-Carlo mean does not converge",
            stacklevel=3,
        )
    return tuple(flags)


def simulate_expected_max(
    spec: DistributionSpec, n: int, trials: int, seed: int, workers: int = 1
) -> McEstimate:
    """Estimate the expected maximum of n draws by direct simulation."""
    n, trials = _check_n(n), _check_trials(trials)
    fam, p1, p2 = _encode(spec)
    flags = _pareto_flags(spec)
    kern = _kernels(active_backend())
    s = _seed_u64(seed)
    mean, se = _reduce_blocks(
        lambda start, count: kern.expected_max_block(s, start, count, n, fam, p1, p2),
        trials,
        workers,
    )
    return McEstimate(mean=mean, std_error=se, trials=trials, seed=int(seed), flags=flags)


def simulate_selection(
    model: NoisyModel, n: int, trials: int, seed: int, workers: int = 1
) -> McEstimate:
    """Estimate the true return of the item measuring largest among n.

    The mean is in return coordinates; add the model worth mean for worth.
    """
    n, trials = _check_n(n), _check_trials(trials)
    kern = _kernels(active_backend())
    s = _seed_u64(seed)
    a, b = model.worth_spread, model.error_spread
    mean, se = _reduce_blocks(
        lambda start, count: kern.selection_block(s, start, count, n, a, b),
        trials,
        workers,
    )
    return McEstimate(mean=mean, std_error=se, trials=trials, seed=int(seed))


def simulate_one_more(
    model: NoisyModel, w0: float, trials: int, seed: int, workers: int = 1
) -> McEstimate:
    """Estimate the expected improvement from one extra draw past best w0."""
    trials = _check_trials(trials)
    kern = _kernels(active_backend())
    s = _seed_u64(seed)
    a, b = model.worth_spread, model.error_spread
    mean, se = _reduce_blocks(
        lambda start, count: kern.one_more_block(
            s, start, count, float(w0), a, b, model.shrinkage
        ),
        trials,
        workers,
    )
    return McEstimate(mean=mean, std_error=se, trials=trials, seed=int(seed))


def simulate_policy(
    model: NoisyModel,
    cost: CostModel,
    policy: Policy,
    trials: int,
    seed: int,
    workers: int = 1,
) -> McEstimate:
    """Estimate the net gain (worth minus cost, first pick free) of a policy."""
    trials = _check_trials(trials)
    kern = _kernels(active_backend())
    s = _seed_u64(seed)
    a, b = model.worth_spread, model.error_spread
    mu, c = model.worth_mean, cost.per_item_cost
    if isinstance(policy, PlannedN):
        n = _check_n(policy.n)
        fn = lambda start, count: kern.policy_planned_block(
            s, start, count, n, a, b, mu, c
        )
    elif isinstance(policy, OneMoreLookahead):
        max_n = _check_n(policy.max_n)
        fn = lambda start, count: kern.policy_lookahead_block(
            s, start, count, max_n, a, b, mu, c
        )
    else:
        raise TypeError(f"unsupported policy: {policy!r}")
    mean, se = _reduce_blocks(fn, trials, workers)
    return McEstimate(mean=mean, std_error=se, trials=trials, seed=int(seed))
