"""Selective wrappers: periodic, flipcoin, scrackmon, sizeswitch."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from crackcol import (
    CrackedColumn,
    Oracle,
    QueryRange,
    SelectiveConfig,
    StochasticConfig,
    make_strategy,
)
from crackcol.selective import ScrackMonStrategy
from crackcol.stochastic import Mdd1rStrategy


def shuffled(n, seed=0):
    return np.random.default_rng(seed).permutation(n)


def run_metrics(strategy, values, queries):
    col = CrackedColumn(values)
    rows = []
    for q in queries:
        res = strategy.select(col, q)
        c = col.counters
        rows.append((c.tuples_touched, c.swaps, c.cracks_added, res.count))
    return rows, col.crack_values[:], col.crack_positions[:]


def random_queries(n, domain, width, seed=0):
    rng = np.random.default_rng(seed)
    return [
        QueryRange(int(low), int(low) + width)
        for low in rng.integers(0, domain - width, size=n)
    ]


class TestPeriodic:
    def test_period_one_is_the_inner_strategy(self):
        values = shuffled(2000, seed=1)
        queries = random_queries(40, 2000, 10)
        inner = run_metrics(Mdd1rStrategy(StochasticConfig(), seed=77), values, queries)
        wrapped = run_metrics(
            make_strategy("periodic", sel=SelectiveConfig(period=1), seed=77),
            values,
            queries,
        )
        assert inner == wrapped

    def test_period_two_alternates_starting_with_original(self):
        # odd data values with even query bounds: original cracking inserts
        # the (even) bounds, the stochastic method only (odd) data pivots
        values = shuffled(500, seed=2) * 2 + 1
        col = CrackedColumn(values)
        s = make_strategy("periodic", sel=SelectiveConfig(period=2), seed=5)
        schedule = []
        for q in random_queries(4, 980, 10, seed=3):
            s.select(col, q)
            bounds_cracked = q.low in col.crack_values or q.high in col.crack_values
            schedule.append("crack" if bounds_cracked else "stochastic")
        assert schedule == ["crack", "stochastic", "crack", "stochastic"]

    def test_counts(self):
        values = shuffled(300)
        s = make_strategy("periodic", sel=SelectiveConfig(period=4), seed=5)
        col = CrackedColumn(values)
        for q in random_queries(16, 300, 5):
            s.select(col, q)
        assert s.queries_seen == 16
        assert s.stochastic_queries == 4


class TestFlipCoin:
    def test_always_heads_is_the_inner_strategy(self):
        values = shuffled(2000, seed=3)
        queries = random_queries(40, 2000, 10, seed=1)
        inner = run_metrics(Mdd1rStrategy(StochasticConfig(), seed=31), values, queries)
        wrapped = run_metrics(
            make_strategy("flipcoin", sel=SelectiveConfig(coin_p=1.0), seed=31),
            values,
            queries,
        )
        assert inner == wrapped

    def test_always_tails_is_original_cracking(self):
        values = shuffled(2000, seed=3)
        queries = random_queries(40, 2000, 10, seed=1)
        plain = run_metrics(make_strategy("crack"), values, queries)
        wrapped = run_metrics(
            make_strategy("flipcoin", sel=SelectiveConfig(coin_p=0.0), seed=31),
            values,
            queries,
        )
        assert plain == wrapped

    def test_fair_coin_within_three_sigma(self):
        values = shuffled(64)
        s = make_strategy("flipcoin", sel=SelectiveConfig(coin_p=0.5), seed=123)
        col = CrackedColumn(values)
        q = QueryRange(10, 20)
        for _ in range(10_000):
            s.select(col, q)
        assert abs(s.stochastic_queries - 5000) <= 3 * 50


class TestScrackMon:
    def test_threshold_one_monitors_tightly(self):
        values = shuffled(1000, seed=4)
        s = make_strategy("scrackmon", sel=SelectiveConfig(monitor_threshold=1), seed=9)
        col = CrackedColumn(values)
        s.select(col, QueryRange(300, 400))
        # the first crack of the fresh column is original, the second request
        # (its child, counter already 1) goes stochastic
        assert [d[2] for d in s.decisions] == [False, True]

    def test_counter_inheritance_and_reset(self):
        values = shuffled(4000, seed=5)
        s = ScrackMonStrategy(SelectiveConfig(monitor_threshold=5), StochasticConfig(), seed=9)
        col = CrackedColumn(values)

        s.select(col, QueryRange(10, 20))
        pos10 = col.crack_values.index(10)
        assert s.counters[0] == 1
        assert s.counters[col.crack_positions[pos10]] == 2  # child of the 2nd crack

        s.select(col, QueryRange(30, 40))
        s.select(col, QueryRange(50, 60))  # low: count 4->5; high: count 5 -> stochastic
        assert [d[2] for d in s.decisions] == [False] * 5 + [True]
        reset_lo = s.decisions[-1][0]
        assert s.counters[reset_lo] == 0
        # the stochastic crack's second child inherited the reset counter
        children = [lo for lo in s.counters if lo > reset_lo]
        if children:
            assert s.counters[min(children)] == 0

    def test_oracle_equivalence_under_monitoring(self):
        values = shuffled(3000, seed=6)
        oracle = Oracle(values)
        s = make_strategy(
            "scrackmon", sel=SelectiveConfig(monitor_threshold=3), seed=11
        )
        col = CrackedColumn(values)
        for q in random_queries(200, 3000, 10, seed=7):
            res = s.select(col, q)
            assert oracle.matches(q, res)


class TestSizeSwitch:
    def test_zero_threshold_always_stochastic(self):
        values = shuffled(500, seed=2) * 2 + 1  # odd values, even bounds
        s = make_strategy("sizeswitch", sel=SelectiveConfig(size_threshold=0), seed=3)
        col = CrackedColumn(values)
        for q in random_queries(20, 980, 10, seed=4):
            s.select(col, q)
        assert all(used for _, _, used in s.decisions)
        assert all(v % 2 == 1 for v in col.crack_values)  # never a bound crack

    def test_huge_threshold_is_original_cracking(self):
        values = shuffled(2000, seed=3)
        queries = random_queries(40, 2000, 10, seed=1)
        plain = run_metrics(make_strategy("crack"), values, queries)
        wrapped = run_metrics(
            make_strategy("sizeswitch", sel=SelectiveConfig(size_threshold=2001), seed=3),
            values,
            queries,
        )
        assert plain == wrapped

    def test_stochastic_only_on_large_pieces(self):
        values = shuffled(100_000, seed=8)
        oracle = Oracle(values)
        s = make_strategy("sizeswitch", sel=SelectiveConfig(size_threshold=8192), seed=13)
        col = CrackedColumn(values)
        for q in random_queries(300, 100_000, 10, seed=9):
            res = s.select(col, q)
            assert oracle.matches(q, res)
        assert s.decisions  # audit log populated
        for _lo, size, used in s.decisions:
            assert used == (size > 8192)


@given(
    seed=st.integers(0, 2**31),
    queries=st.lists(
        st.tuples(st.integers(-10, 320), st.integers(0, 40)), min_size=1, max_size=12
    ),
)
@settings(max_examples=60, deadline=None)
def test_selective_strategies_match_oracle(seed, queries):
    values = shuffled(300, seed=seed % 50)
    oracle = Oracle(values)
    cfg = StochasticConfig(crack_size=32, l2_size=64, swap_frac=0.25)
    sel = SelectiveConfig(period=3, coin_p=0.4, monitor_threshold=2, size_threshold=40)
    for name in ("periodic", "flipcoin", "scrackmon", "sizeswitch"):
        col = CrackedColumn(values)
        strategy = make_strategy(name, stoch=cfg, sel=sel, seed=seed)
        for low, width in queries:
            q = QueryRange(low, low + width)
            res = strategy.select(col, q)
            assert oracle.matches(q, res), (name, q)
        assert sorted(col.data.tolist()) == sorted(values.tolist())
