"""Command-line frontend: rankit tables, plans, an interactive advisor,
simulations, and the HTTP service.

Exit codes: 0 success, 2 usage error, 3 model validation error,
4 divergent gain (fat-tailed worth with no finite optimum).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import mc_oracle
from .distributions import DistributionError, spec_from_text, spec_to_dict
from .noisy_selection import NoisyModel
from .order_stats import DivergenceError, RankitTable
from .planner import CostModel, optimal_sample_size
from .sequential_advisor import Recommendation, SessionState, advise, record_observation

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_DIVERGENT = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optistop",
        description="How many to sample, when to stop, and what noise costs you.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rankits = sub.add_parser(
        "rankits", help="expected-maximum table K_n and marginals k_n"
    )
    rankits.add_argument(
        "--dist",
        required=True,
        help="preset (std_normal, uniform01) or JSON spec",
    )
    rankits.add_argument("--max-n", type=int, required=True)
    rankits.add_argument("--tol", type=float, default=1e-9)
    rankits.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")

    plan = sub.add_parser("plan", help="optimal sample size for a cost model")
    plan.add_argument("--mu", type=float, help="worth mean (noisy pathway)")
    plan.add_argument("--a", type=float, help="worth spread, std dev (noisy pathway)")
    plan.add_argument("--b", type=float, help="error spread, std dev (noisy pathway)")
    plan.add_argument("--dist", help="ideal pathway: preset or JSON spec")
    plan.add_argument("--c", type=float, required=True, help="cost per measured item")
    plan.add_argument("--n-max", type=int, default=10_000)

    adv = sub.add_parser(
        "advise", help="interactive one-more-sample advisor (reads measurements)"
    )
    adv.add_argument("--mu", type=float, required=True)
    adv.add_argument("--a", type=float, required=True)
    adv.add_argument("--b", type=float, required=True)
    adv.add_argument("--c", type=float, required=True)
    adv.add_argument(
        "--curve",
        action="store_true",
        help="print the standardized one-more-value table z,v_plus and exit",
    )

    sim = sub.add_parser("simulate", help="Monte-Carlo checks of the analytic values")
    target = sim.add_subparsers(dest="target", required=True)

    def _mc_args(p):
        p.add_argument("--trials", type=int, default=1_000_000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1)

    t = target.add_parser("expected-max", help="expected maximum of n draws")
    t.add_argument("--dist", required=True)
    t.add_argument("--n", type=int, required=True)
    _mc_args(t)

    t = target.add_parser(
        "selection", help="return of the item measuring largest (return units)"
    )
    t.add_argument("--a", type=float, required=True)
    t.add_argument("--b", type=float, required=True)
    t.add_argument("--n", type=int, required=True)
    _mc_args(t)

    t = target.add_parser("one-more", help="value of one extra draw past best w0")
    t.add_argument("--a", type=float, required=True)
    t.add_argument("--b", type=float, required=True)
    t.add_argument("--w0", type=float, required=True)
    _mc_args(t)

    t = target.add_parser("policy", help="net gain of a whole sampling policy")
    t.add_argument("--mu", type=float, required=True)
    t.add_argument("--a", type=float, required=True)
    t.add_argument("--b", type=float, required=True)
    t.add_argument("--c", type=float, required=True)
    group = t.add_mutually_exclusive_group(required=True)
    group.add_argument("--planned-n", type=int)
    group.add_argument("--lookahead-max", type=int)
    _mc_args(t)

    srv = sub.add_parser("serve", help="run the JSON/HTTP session service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8000)
    srv.add_argument(
        "--snapshot", default=None, help="JSON-lines event log (default: $OPTISTOP_SNAPSHOT)"
    )
    srv.add_argument(
        "--static", default=None, help="directory of UI assets to mount at /"
    )

    return parser


def _fail(message: str, code: int) -> int:
    print(f"optistop: {message}", file=sys.stderr)
    return code


def _noisy_model(args) -> NoisyModel:
    return NoisyModel(worth_mean=args.mu, worth_spread=args.a, error_spread=args.b)


def _cmd_rankits(args) -> int:
    spec = spec_from_text(args.dist)
    table = RankitTable.compute(spec, args.max_n, args.tol)
    if args.csv:
        sys.stdout.write(table.to_csv())
    else:
        print(
            json.dumps(
                {
                    "spec": spec_to_dict(spec),
                    "max_n": table.max_n,
                    "tolerance": table.tolerance,
                    "rows": [[n, total, marginal] for n, total, marginal in table.rows()],
                }
            )
        )
    return EXIT_OK


def _cmd_plan(args, parser) -> int:
    noisy_flags = [args.mu, args.a, args.b]
    if args.dist is not None and any(v is not None for v in noisy_flags):
        parser.error("--dist and --mu/--a/--b are mutually exclusive")
    if args.dist is not None:
        target = spec_from_text(args.dist)
    elif all(v is not None for v in noisy_flags):
        target = _noisy_model(args)
    else:
        parser.error("plan needs either --dist or all of --mu --a --b")
    result = optimal_sample_size(target, CostModel(args.c), n_max=args.n_max)
    if result.diverges and not math.isfinite(result.expected_gain):
        return _fail("expected gain increases without bound (divergent fat tail)", EXIT_DIVERGENT)
    print(result.to_json())
    return EXIT_OK


def _cmd_advise(args) -> int:
    if args.curve:
        # the decision table: z, standardized one-more value; the verdict
        # line for this model sits at z where a*eta*v_plus(z) = c
        from .sequential_advisor import v_plus

        print("z,v_plus")
        for z in [x / 10.0 for x in range(-40, 41)]:
            print(f"{z:g},{format(v_plus(z), '.12g')}")
        return EXIT_OK
    session = SessionState(model=_noisy_model(args), cost=CostModel(args.c))
    interactive = sys.stdin.isatty()
    while True:
        if interactive:
            print("measured worth> ", end="", file=sys.stderr, flush=True)
        line = sys.stdin.readline()
        if not line:
            break
        line = line.strip()
        if not line or line.lower() in ("q", "quit", "exit"):
            break
        try:
            value = float(line)
        except ValueError:
            print(f"optistop: not a number: {line!r}", file=sys.stderr)
            continue
        try:
            session = record_observation(session, value)
        except ValueError as exc:
            print(f"optistop: {exc}", file=sys.stderr)
            continue
        verdict = advise(session)
        print(json.dumps(verdict.to_dict()), flush=True)
        if verdict.recommendation is Recommendation.STOP:
            break
    return EXIT_OK


def _cmd_simulate(args) -> int:
    kwargs = dict(trials=args.trials, seed=args.seed, workers=args.workers)
    if args.target == "expected-max":
        est = mc_oracle.simulate_expected_max(
            spec_from_text(args.dist), args.n, **kwargs
        )
    elif args.target == "selection":
        model = NoisyModel(worth_mean=0.0, worth_spread=args.a, error_spread=args.b)
        est = mc_oracle.simulate_selection(model, args.n, **kwargs)
    elif args.target == "one-more":
        model = NoisyModel(worth_mean=0.0, worth_spread=args.a, error_spread=args.b)
        est = mc_oracle.simulate_one_more(model, args.w0, **kwargs)
    else:
        model = _noisy_model(args)
        if args.planned_n is not None:
            policy = mc_oracle.PlannedN(args.planned_n)
        else:
            policy = mc_oracle.OneMoreLookahead(args.lookahead_max)
        est = mc_oracle.simulate_policy(model, CostModel(args.c), policy, **kwargs)
    print(json.dumps(est.to_dict()))
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .service import serve

    serve(
        host=args.host,
        port=args.port,
        snapshot_path=args.snapshot,
        static_dir=args.static,
    )
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "rankits":
            return _cmd_rankits(args)
        if args.command == "plan":
            return _cmd_plan(args, parser)
        if args.command == "advise":
            return _cmd_advise(args)
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "serve":
            return _cmd_serve(args)
        parser.error(f"unknown command {args.command!r}")
    except DivergenceError as exc:
        return _fail(str(exc), EXIT_DIVERGENT)
    except (DistributionError, ValueError) as exc:
        return _fail(str(exc), EXIT_VALIDATION)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
