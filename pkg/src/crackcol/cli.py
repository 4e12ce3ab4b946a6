"""Command-line interface: run benchmarks, verify results, list names.

Exit codes: 0 success, 1 verification or output failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys

from .bench import (
    RunConfig,
    STRATEGY_NAMES,
    VerificationFailure,
    run_benchmark,
    run_verify,
    write_csv,
)
from .column import load_values
from .selective import SelectiveConfig
from .stochastic import StochasticConfig
from .workloads import PATTERNS


def _add_run_arguments(p):
    p.add_argument("--strategy", required=True, choices=STRATEGY_NAMES)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--workload", choices=PATTERNS, help="synthetic pattern (default: random)")
    src.add_argument("--workload-file", help="trace file: one 'low high' pair per line")
    p.add_argument("--n", type=int, default=1_000_000, help="column size for generated data")
    p.add_argument("--queries", type=int, default=1000)
    p.add_argument("--selectivity", type=float, help="sets width = ceil(selectivity * n)")
    p.add_argument("--width", type=int, help="query range width in values (default: 10)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--crack-size", type=int, default=StochasticConfig.crack_size)
    p.add_argument("--l2-size", type=int, default=StochasticConfig.l2_size)
    p.add_argument("--swap-frac", type=float, default=StochasticConfig.swap_frac)
    p.add_argument("--period", type=int, default=SelectiveConfig.period)
    p.add_argument("--coin-p", type=float, default=SelectiveConfig.coin_p)
    p.add_argument("--monitor-threshold", type=int, default=SelectiveConfig.monitor_threshold)
    p.add_argument("--size-threshold", type=int, default=SelectiveConfig.size_threshold)
    p.add_argument("--values-file", help="column values, one decimal integer per line")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="crackcol",
        description="Adaptive column indexing benchmarks (cracking and friends).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a benchmark and emit per-query metrics as CSV")
    _add_run_arguments(run_p)
    run_p.add_argument("--out", help="CSV output path (default: stdout)")
    run_p.add_argument("--no-timing", action="store_true", help="zero the wall-clock columns")

    ver_p = sub.add_parser("verify", help="run with a per-query oracle comparison")
    _add_run_arguments(ver_p)

    sub.add_parser("list", help="print strategy and workload names")
    return parser


def _build_config(args, timing) -> RunConfig:
    if args.width is not None:
        width = args.width
    elif args.selectivity is not None:
        n = args.n
        if args.values_file is not None:
            n = int(load_values(args.values_file).size)
        width = math.ceil(args.selectivity * n)
    else:
        width = 10
    workload = args.workload
    if workload is None and args.workload_file is None:
        workload = "random"
    return RunConfig(
        strategy=args.strategy,
        n_tuples=args.n,
        workload=workload,
        queries=args.queries,
        width=width,
        seed=args.seed,
        timing=timing,
        values_file=args.values_file,
        workload_file=args.workload_file,
        stoch=StochasticConfig(args.crack_size, args.l2_size, args.swap_frac),
        sel=SelectiveConfig(
            period=args.period,
            coin_p=args.coin_p,
            monitor_threshold=args.monitor_threshold,
            size_threshold=args.size_threshold,
        ),
    )


def _cmd_run(args) -> int:
    cfg = _build_config(args, timing=not args.no_timing)
    metrics = run_benchmark(cfg)
    try:
        if args.out:
            with open(args.out, "w", newline="") as fh:
                write_csv(metrics, fh)
        else:
            write_csv(metrics, sys.stdout)
    except OSError as exc:
        print(f"crackcol: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0


def _cmd_verify(args) -> int:
    cfg = _build_config(args, timing=False)
    try:
        count = run_verify(cfg)
    except VerificationFailure as exc:
        print(f"crackcol: verification failed: {exc}", file=sys.stderr)
        return 1
    print(f"verified {count} queries for strategy {cfg.strategy}: all results match the oracle")
    return 0


def _cmd_list(_args) -> int:
    print("strategies:")
    for name in STRATEGY_NAMES:
        print(f"  {name}")
    print("workloads:")
    for name in PATTERNS:
        print(f"  {name}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_list(args)
    except ValueError as exc:
        parser.exit(2, f"crackcol: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
