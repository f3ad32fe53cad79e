"""Time the numba kernels against the pure-NumPy fallback.

Usage: python3 benchmarks/bench_backends.py [--trials N] [--workers W]

Each target is warmed once (absorbing jit compilation) and then timed; the
table reports per-backend wall time and the speedup.  The two backends share
the counter-based draw streams, so the means printed should agree to float
noise regardless of which one you deploy.
"""

import argparse
import os
import time

os.environ.setdefault("OPTISTOP_BACKEND", "numba")

from optistop.backend import BACKEND_ENV, HAVE_NUMBA
from optistop.distributions import StandardNormal, Uniform
from optistop.mc_oracle import (
    OneMoreLookahead,
    simulate_expected_max,
    simulate_one_more,
    simulate_policy,
    simulate_selection,
)
from optistop.noisy_selection import NoisyModel
from optistop.planner import CostModel


def targets(trials, workers):
    model = NoisyModel(worth_mean=0.0, worth_spread=3.0, error_spread=4.0)
    cheap = CostModel(0.05)
    kw = dict(trials=trials, seed=42, workers=workers)
    return [
        ("expected_max uniform n=10", lambda: simulate_expected_max(Uniform(0, 1), 10, **kw)),
        ("expected_max normal n=10", lambda: simulate_expected_max(StandardNormal(), 10, **kw)),
        ("selection a=3 b=4 n=10", lambda: simulate_selection(model, 10, **kw)),
        ("one_more a=3 b=4 w0=5", lambda: simulate_one_more(model, 5.0, **kw)),
        ("policy lookahead max=20", lambda: simulate_policy(model, cheap, OneMoreLookahead(20), **kw)),
    ]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=1_000_000)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    backends = ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]
    if not HAVE_NUMBA:
        print("numba not importable; timing the NumPy path only")

    timings = {}
    means = {}
    for backend in backends:
        os.environ[BACKEND_ENV] = backend
        for name, fn in targets(10_000, args.workers):
            fn()  # warm: jit compile + cache priming
        for name, fn in targets(args.trials, args.workers):
            started = time.perf_counter()
            est = fn()
            timings[(backend, name)] = time.perf_counter() - started
            means[(backend, name)] = est.mean

    width = max(len(name) for name, _ in targets(1_000, 1))
    print(f"\ntrials={args.trials}, workers={args.workers}")
    header = f"{'target':<{width}}  " + "".join(f"{b:>12}" for b in backends)
    print(header + ("     speedup" if len(backends) == 2 else ""))
    for name, _ in targets(args.trials, args.workers):
        row = f"{name:<{width}}  "
        for backend in backends:
            row += f"{timings[(backend, name)]:>11.3f}s"
        if len(backends) == 2:
            row += f"{timings[('numpy', name)] / timings[('numba', name)]:>11.1f}x"
        print(row)
        if len(backends) == 2:
            drift = abs(means[("numba", name)] - means[("numpy", name)])
            assert drift < 1e-9, f"backend means drifted: {drift}"
    if len(backends) == 2:
        print("\nper-target means agreed across backends to < 1e-9")


if __name__ == "__main__":
    main()
