"""Kernel contracts against brute-force oracles, plus backend parity."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crackcol.kernels import _pykernels

try:
    from crackcol.kernels import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = [_pykernels] + ([_ckernels] if _ckernels is not None else [])

small_arrays = st.lists(
    st.integers(min_value=-(2**62), max_value=2**62), min_size=1, max_size=100
)
dup_arrays = st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=100)
any_arrays = st.one_of(small_arrays, dup_arrays)


def arr(values):
    return np.array(values, dtype=np.int64)


@pytest.fixture(params=BACKENDS, ids=lambda m: m.__name__.rsplit("_", 1)[-1])
def kern(request):
    return request.param


# --- partition ---------------------------------------------------------


@given(values=any_arrays, data=st.data())
@settings(max_examples=150)
def test_partition_matches_counting_oracle(values, data):
    pivot = data.draw(st.sampled_from(values + [min(values) - 1, max(values) + 1]))
    for kern in BACKENDS:
        a = arr(values)
        pos, touched, swaps = kern.partition(a, 0, len(values) - 1, pivot)
        assert pos == sum(1 for v in values if v < pivot)
        assert all(v < pivot for v in a[:pos])
        assert all(v >= pivot for v in a[pos:])
        assert sorted(a.tolist()) == sorted(values)
        assert touched == len(values)
        assert swaps <= len(values) // 2


@given(values=any_arrays, data=st.data())
@settings(max_examples=150)
def test_partition_backend_parity(values, data):
    if _ckernels is None:
        pytest.skip("compiled backend unavailable")
    pivot = data.draw(st.sampled_from(values))
    a, b = arr(values), arr(values)
    res_py = _pykernels.partition(a, 0, len(values) - 1, pivot)
    res_c = _ckernels.partition(b, 0, len(values) - 1, pivot)
    assert res_py == res_c
    assert a.tolist() == b.tolist()


def test_partition_subrange_only(kern):
    a = arr([100, -5, 7, 3, 9, 1, -100])
    pos, touched, swaps = kern.partition(a, 1, 5, 6)
    assert pos == 1 + 3
    assert a[0] == 100 and a[6] == -100
    assert sorted(a[1:4].tolist()) == [-5, 1, 3]
    assert sorted(a[4:6].tolist()) == [7, 9]
    assert touched == 5


# --- split_materialize --------------------------------------------------


@given(values=any_arrays, data=st.data())
@settings(max_examples=150)
def test_split_materialize_collects_qualifying(values, data):
    pivot = data.draw(st.sampled_from(values))
    low = data.draw(st.integers(min_value=min(values) - 1, max_value=max(values) + 1))
    high = data.draw(st.integers(min_value=low, max_value=max(values) + 2))
    results = []
    for kern in BACKENDS:
        a = arr(values)
        pos, touched, swaps, out = kern.split_materialize(
            a, 0, len(values) - 1, pivot, low, high
        )
        assert sorted(out.tolist()) == sorted(v for v in values if low <= v < high)
        assert pos == sum(1 for v in values if v < pivot)
        assert touched == len(values)
        assert all(v < pivot for v in a[:pos])
        assert all(v >= pivot for v in a[pos:])
        results.append((pos, touched, swaps, out.tolist(), a.tolist()))
    if len(results) == 2:
        assert results[0] == results[1]


# --- partial_split_materialize ------------------------------------------


def _run_progressively(kern, values, pivot, low, high, budget):
    """Apply budget-limited passes until the partition completes."""
    a = arr(values)
    cur_l, cur_r = 0, len(values) - 1
    total_swaps = 0
    buffers = []
    for _ in range(10 * len(values) + 10):
        cur_l, cur_r, done, pos, touched, swaps, out = kern.partial_split_materialize(
            a, 0, len(values) - 1, cur_l, cur_r, pivot, low, high, budget
        )
        assert touched == len(values)
        assert swaps <= budget
        total_swaps += swaps
        buffers.append(sorted(out.tolist()))
        if done:
            return a, pos, total_swaps, buffers
    raise AssertionError("partition never completed")


@given(values=any_arrays, data=st.data())
@settings(max_examples=100)
def test_partial_split_resumption_equals_one_shot(values, data):
    pivot = data.draw(st.sampled_from(values))
    low = data.draw(st.integers(min_value=min(values) - 1, max_value=max(values) + 1))
    high = data.draw(st.integers(min_value=low, max_value=max(values) + 2))
    budget = data.draw(st.integers(min_value=1, max_value=len(values)))
    for kern in BACKENDS:
        ref = arr(values)
        ref_pos, _, ref_swaps, ref_out = kern.split_materialize(
            ref, 0, len(values) - 1, pivot, low, high
        )
        a, pos, total_swaps, buffers = _run_progressively(
            kern, values, pivot, low, high, budget
        )
        assert a.tolist() == ref.tolist()
        assert pos == ref_pos
        assert total_swaps == ref_swaps
        expected = sorted(ref_out.tolist())
        for buf in buffers:
            assert buf == expected


def test_partial_split_three_zones(kern):
    values = list(range(40, 0, -1))
    a = arr(values)
    cur_l, cur_r, done, pos, touched, swaps, out = kern.partial_split_materialize(
        a, 0, 39, 0, 39, 20, 5, 15, 4
    )
    assert not done
    assert swaps == 4
    assert touched == 40
    assert all(v < 20 for v in a[:cur_l])
    assert all(v >= 20 for v in a[cur_r + 1 :])
    assert sorted(out.tolist()) == list(range(5, 15))
    assert sorted(a.tolist()) == sorted(values)


def test_partial_split_full_budget_is_one_shot(kern):
    values = [9, 1, 8, 2, 7, 3, 6, 4, 5]
    one = arr(values)
    pos1, t1, s1, out1 = kern.split_materialize(one, 0, 8, 5, 2, 7)
    prog = arr(values)
    cur_l, cur_r, done, pos2, t2, s2, out2 = kern.partial_split_materialize(
        prog, 0, 8, 0, 8, 5, 2, 7, len(values)
    )
    assert done
    assert (pos1, t1, s1) == (pos2, t2, s2)
    assert one.tolist() == prog.tolist()
    assert out1.tolist() == out2.tolist()


# --- scan_filter ---------------------------------------------------------


@given(values=any_arrays, data=st.data())
@settings(max_examples=80)
def test_scan_filter_oracle(values, data):
    low = data.draw(st.integers(min_value=min(values) - 1, max_value=max(values) + 1))
    high = data.draw(st.integers(min_value=low, max_value=max(values) + 2))
    for kern in BACKENDS:
        a = arr(values)
        out, touched = kern.scan_filter(a, low, high)
        assert sorted(out.tolist()) == sorted(v for v in values if low <= v < high)
        assert touched == len(values)
        assert a.tolist() == values  # scan never reorganizes


# --- heapsort -------------------------------------------------------------


@given(values=any_arrays)
@settings(max_examples=100)
def test_heapsort_sorts_with_identical_counters(values):
    counters = []
    for kern in BACKENDS:
        a = arr(values)
        touched, swaps = kern.heapsort(a, 0, len(values) - 1)
        assert a.tolist() == sorted(values)
        counters.append((touched, swaps))
    assert len(set(counters)) == 1


def test_heapsort_subrange(kern):
    a = arr([5, 4, 3, 2, 1, 0])
    kern.heapsort(a, 1, 4)
    assert a.tolist() == [5, 1, 2, 3, 4, 0]


# --- select_value ----------------------------------------------------------


@given(values=any_arrays, data=st.data())
@settings(max_examples=150)
def test_select_value_is_order_statistic(values, data):
    rank = data.draw(st.integers(min_value=0, max_value=len(values) - 1))
    results = []
    for kern in BACKENDS:
        a = arr(values)
        value, touched, swaps = kern.select_value(a, 0, len(values) - 1, rank)
        assert value == sorted(values)[rank]
        assert sorted(a.tolist()) == sorted(values)
        results.append((value, touched, swaps, a.tolist()))
    if len(results) == 2:
        assert results[0] == results[1]


@given(values=any_arrays, data=st.data())
@settings(max_examples=100)
def test_select_value_forced_fallback(values, data):
    """depth_limit=0 exercises the deterministic median-of-medians escape."""
    rank = data.draw(st.integers(min_value=0, max_value=len(values) - 1))
    results = []
    for kern in BACKENDS:
        a = arr(values)
        value, touched, swaps = kern.select_value(a, 0, len(values) - 1, rank, 0)
        assert value == sorted(values)[rank]
        results.append((value, touched, swaps, a.tolist()))
    if len(results) == 2:
        assert results[0] == results[1]


def test_select_value_int64_extremes(kern):
    top = 2**63 - 1
    values = [top, top - 1, -(2**63), 0, top, 17]
    for rank in range(len(values)):
        a = arr(values)
        value, _, _ = kern.select_value(a, 0, len(values) - 1, rank)
        assert value == sorted(values)[rank]


def test_select_value_large_forced_fallback(kern):
    values = np.random.default_rng(7).permutation(3000).tolist()
    a = arr(values)
    value, _, _ = kern.select_value(a, 0, 2999, 1500, 0)
    assert value == 1500
