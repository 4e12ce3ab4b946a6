"""Benchmark harness: wire data, workload and strategy; emit per-query metrics.

Wall-clock columns exist for convenience but all comparisons rest on the
logical work counters (tuples touched, swaps), which are deterministic:
with timing off, a run's CSV is a pure function of its configuration.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np

from .baselines import CrackStrategy, ScanStrategy, SortStrategy
from .column import CrackedColumn, load_values
from .selective import (
    FlipCoinStrategy,
    PeriodicStrategy,
    ScrackMonStrategy,
    SelectiveConfig,
    SizeSwitchStrategy,
)
from .stochastic import (
    Dd1cStrategy,
    Dd1rStrategy,
    DdcStrategy,
    DdrStrategy,
    Mdd1rStrategy,
    Pmdd1rStrategy,
    StochasticConfig,
)
from .verify import Oracle
from .workloads import WorkloadSpec, generate, load_query_file

STRATEGY_NAMES = (
    "scan",
    "sort",
    "crack",
    "ddc",
    "ddr",
    "dd1c",
    "dd1r",
    "mdd1r",
    "pmdd1r",
    "periodic",
    "flipcoin",
    "scrackmon",
    "sizeswitch",
)

CSV_HEADER = (
    "query_idx,elapsed_ns,cum_elapsed_ns,tuples_touched,cum_tuples_touched,"
    "swaps,cracks_added,piece_count,result_count"
)

# keeps the strategy's random stream off the workload's (both derive from
# the one run seed)
_STRATEGY_STREAM_OFFSET = 2**40


def make_strategy(name, stoch: StochasticConfig = None, sel: SelectiveConfig = None, seed: int = 1):
    """Instantiate a strategy by its CLI name."""
    stoch = stoch if stoch is not None else StochasticConfig()
    sel = sel if sel is not None else SelectiveConfig()
    if name == "scan":
        return ScanStrategy()
    if name == "sort":
        return SortStrategy()
    if name == "crack":
        return CrackStrategy()
    if name == "ddc":
        return DdcStrategy(stoch, seed)
    if name == "ddr":
        return DdrStrategy(stoch, seed)
    if name == "dd1c":
        return Dd1cStrategy(stoch, seed)
    if name == "dd1r":
        return Dd1rStrategy(stoch, seed)
    if name == "mdd1r":
        return Mdd1rStrategy(stoch, seed)
    if name == "pmdd1r":
        return Pmdd1rStrategy(stoch, seed)
    if name == "periodic":
        return PeriodicStrategy(sel, stoch, seed)
    if name == "flipcoin":
        return FlipCoinStrategy(sel, stoch, seed)
    if name == "scrackmon":
        return ScrackMonStrategy(sel, stoch, seed)
    if name == "sizeswitch":
        return SizeSwitchStrategy(sel, stoch, seed)
    raise ValueError(f"unknown strategy {name!r}")


@dataclass(frozen=True)
class RunConfig:
    """One benchmark run: strategy x data x query sequence."""

    strategy: str
    n_tuples: int = 1_000_000
    workload: str | None = "random"
    queries: int = 1000
    width: int = 10
    seed: int = 1
    timing: bool = True
    values_file: str | None = None
    workload_file: str | None = None
    stoch: StochasticConfig = field(default_factory=StochasticConfig)
    sel: SelectiveConfig = field(default_factory=SelectiveConfig)

    def __post_init__(self):
        if self.strategy not in STRATEGY_NAMES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.n_tuples < 1:
            raise ValueError("n_tuples must be >= 1")
        if self.workload is None and self.workload_file is None:
            raise ValueError("either a workload pattern or a workload file is required")


@dataclass(frozen=True)
class QueryMetrics:
    query_idx: int
    elapsed_ns: int
    cum_elapsed_ns: int
    tuples_touched: int
    cum_tuples_touched: int
    swaps: int
    cracks_added: int
    piece_count: int
    result_count: int

    def as_csv_row(self) -> str:
        return (
            f"{self.query_idx},{self.elapsed_ns},{self.cum_elapsed_ns},"
            f"{self.tuples_touched},{self.cum_tuples_touched},{self.swaps},"
            f"{self.cracks_added},{self.piece_count},{self.result_count}"
        )


def build_values(cfg: RunConfig) -> np.ndarray:
    """Column data: a seeded shuffle of 0..n-1, or the given values file."""
    if cfg.values_file is not None:
        return load_values(cfg.values_file)
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    return rng.permutation(cfg.n_tuples).astype(np.int64)


def build_queries(cfg: RunConfig, values: np.ndarray):
    if cfg.workload_file is not None:
        return load_query_file(cfg.workload_file)
    domain_lo = int(values.min())
    domain_hi = int(values.max()) + 1
    width = min(cfg.width, domain_hi - domain_lo)
    spec = WorkloadSpec(cfg.workload, domain_lo, domain_hi, width, cfg.queries, seed=cfg.seed)
    return generate(spec)


def run_benchmark(cfg: RunConfig, on_query=None):
    """Execute the run, yielding one :class:`QueryMetrics` per query.

    ``on_query(idx, query, result, column)`` is an optional hook invoked
    after each select (used by verification and tests).
    """
    values = build_values(cfg)
    col = CrackedColumn(values)
    strategy = make_strategy(cfg.strategy, cfg.stoch, cfg.sel, cfg.seed + _STRATEGY_STREAM_OFFSET)
    cum_ns = 0
    cum_touched = 0
    for idx, q in enumerate(build_queries(cfg, values), start=1):
        if cfg.timing:
            t0 = time.perf_counter_ns()
            result = strategy.select(col, q)
            elapsed = time.perf_counter_ns() - t0
        else:
            result = strategy.select(col, q)
            elapsed = 0
        if on_query is not None:
            on_query(idx, q, result, col)
        cum_ns += elapsed
        cum_touched += col.counters.tuples_touched
        yield QueryMetrics(
            query_idx=idx,
            elapsed_ns=elapsed,
            cum_elapsed_ns=cum_ns,
            tuples_touched=col.counters.tuples_touched,
            cum_tuples_touched=cum_touched,
            swaps=col.counters.swaps,
            cracks_added=col.counters.cracks_added,
            piece_count=strategy.piece_count(col),
            result_count=result.count,
        )


class VerificationFailure(Exception):
    def __init__(self, strategy, query_idx, message):
        super().__init__(f"strategy={strategy} query={query_idx}: {message}")
        self.strategy = strategy
        self.query_idx = query_idx


def run_verify(cfg: RunConfig):
    """Run with a per-query oracle comparison; raise on the first mismatch."""
    oracle = Oracle(build_values(cfg))

    def compare(idx, q, result, col):
        if not oracle.matches(q, result):
            raise VerificationFailure(
                cfg.strategy,
                idx,
                f"result of [{q.low}, {q.high}) is not the qualifying multiset "
                f"(expected {oracle.count(q)} values, got {result.count})",
            )

    count = 0
    for _ in run_benchmark(replace(cfg, timing=False), on_query=compare):
        count += 1
    return count


def write_csv(metrics, fh):
    """Write the metrics stream as CSV (exact header, decimal integers)."""
    fh.write(CSV_HEADER + "\n")
    for m in metrics:
        fh.write(m.as_csv_row() + "\n")


def csv_text(cfg: RunConfig) -> str:
    """Entire run as one CSV string (convenience for tests and comparisons)."""
    from io import StringIO

    buf = StringIO()
    write_csv(run_benchmark(cfg), buf)
    return buf.getvalue()
