"""Oracle and whole-column invariant checks."""

import numpy as np

from crackcol import (
    CrackedColumn,
    Oracle,
    QueryRange,
    check_index_sound,
    check_permutation,
    make_strategy,
)


def shuffled(n, seed=0):
    return np.random.default_rng(seed).permutation(n)


class TestOracle:
    def test_full_domain(self):
        oracle = Oracle([5, 1, 9])
        assert oracle.select(QueryRange(0, 10)).tolist() == [1, 5, 9]

    def test_empty_range(self):
        oracle = Oracle([5, 1, 9])
        assert oracle.count(QueryRange(7, 7)) == 0

    def test_basic_range(self):
        oracle = Oracle(list(range(10)))
        q = QueryRange(3, 7)
        assert oracle.count(q) == 4
        assert oracle.select(q).tolist() == [3, 4, 5, 6]

    def test_duplicates_counted(self):
        oracle = Oracle([2, 2, 2, 5])
        assert oracle.count(QueryRange(2, 3)) == 3


class TestIndexSound:
    def test_fresh_column_ok(self):
        assert check_index_sound(CrackedColumn([3, 1, 2])) is None

    def test_after_cracking_ok(self):
        col = CrackedColumn(shuffled(500, seed=2))
        s = make_strategy("crack")
        rng = np.random.default_rng(1)
        for _ in range(40):
            low = int(rng.integers(0, 490))
            s.select(col, QueryRange(low, low + 10))
            assert check_index_sound(col) is None

    def test_corruption_detected_with_position(self):
        col = CrackedColumn(shuffled(100, seed=3))
        col.crack_in_two(col.find_piece(50), 50)
        col.data[10] = 99  # left side must stay < 50
        report = check_index_sound(col)
        assert report is not None
        assert "data[10]" in report


class TestPermutation:
    def test_untouched_ok(self):
        values = shuffled(100)
        assert check_permutation(CrackedColumn(values), Oracle(values)) is None

    def test_after_mixed_strategies_ok(self):
        values = shuffled(2000, seed=4)
        oracle = Oracle(values)
        col = CrackedColumn(values)
        rng = np.random.default_rng(2)
        for name in ("crack", "ddr", "mdd1r", "pmdd1r"):
            strategy = make_strategy(name, seed=3)
            for _ in range(20):
                low = int(rng.integers(0, 1980))
                strategy.select(col, QueryRange(low, low + 15))
        assert check_permutation(col, oracle) is None

    def test_overwrite_detected(self):
        values = shuffled(100)
        col = CrackedColumn(values)
        oracle = Oracle(values)
        col.data[5] = 12345
        assert check_permutation(col, oracle) is not None
