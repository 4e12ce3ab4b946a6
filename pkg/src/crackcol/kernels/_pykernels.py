"""Pure-Python partition, selection and sort kernels.

These are the reference implementations of the hot loops. The compiled
extension in ``_ckernels.pyx`` mirrors them statement for statement; both
backends must produce identical array layouts and identical counter values
for every input (enforced by tests/test_kernels.py).

Counting conventions, shared by both backends:

* ``touched`` counts one per element consumed by a cursor in a partition
  pass, one per element read in a filter scan, and one per comparison in
  selection/sort code.
* ``swaps`` counts one per element exchange, and one per element shift in
  insertion sorts.

Cracker-index bookkeeping (piece lookups, bound checks) is deliberately not
counted; reorganization cost is the quantity of interest.
"""

from __future__ import annotations

import numpy as np

I64_MAX = 2**63 - 1

# Windows at or below this size are finished with an insertion sort during
# order-statistic selection.
_SELECT_CUTOFF = 16


def partition(data, lo, hi, pivot):
    """Two-cursor in-place partition of ``data[lo..hi]`` (inclusive bounds).

    Moves every element ``< pivot`` before every element ``>= pivot`` and
    returns ``(pos, touched, swaps)`` where ``pos`` is the first index of
    the ``>= pivot`` region (``hi + 1`` if there is none). ``touched`` is
    always the window size: each element is consumed exactly once.
    """
    left = lo
    right = hi
    touched = 0
    swaps = 0
    while True:
        while left <= right and data[left] < pivot:
            left += 1
            touched += 1
        while left <= right and data[right] >= pivot:
            right -= 1
            touched += 1
        if left > right:
            break
        tmp = data[left]
        data[left] = data[right]
        data[right] = tmp
        swaps += 1
    return left, touched, swaps


def split_materialize(data, lo, hi, pivot, low, high):
    """Partition ``data[lo..hi]`` around ``pivot`` while collecting values
    in ``[low, high)``.

    Single pass: every element is examined for qualification exactly once,
    while it is consumed by one of the two partition cursors. Returns
    ``(pos, touched, swaps, out)`` with ``out`` an owned int64 array of the
    qualifying values.
    """
    out = np.empty(hi - lo + 1, dtype=np.int64)
    n_out = 0
    left = lo
    right = hi
    touched = 0
    swaps = 0
    while True:
        while left <= right and data[left] < pivot:
            v = data[left]
            if low <= v and v < high:
                out[n_out] = v
                n_out += 1
            left += 1
            touched += 1
        while left <= right and data[right] >= pivot:
            v = data[right]
            if low <= v and v < high:
                out[n_out] = v
                n_out += 1
            right -= 1
            touched += 1
        if left > right:
            break
        tmp = data[left]
        data[left] = data[right]
        data[right] = tmp
        swaps += 1
    return left, touched, swaps, out[:n_out].copy()


def partial_split_materialize(data, lo, hi, cur_l, cur_r, pivot, low, high, max_swaps):
    """Budget-limited resumable variant of :func:`split_materialize`.

    ``data[lo..hi]`` is a piece whose partition around ``pivot`` is in
    flight: positions ``[lo, cur_l)`` already hold values ``< pivot`` and
    positions ``(cur_r, hi]`` values ``>= pivot``. The pass resumes at the
    stored cursors and stops before exceeding ``max_swaps`` exchanges.

    The current query is always answered completely: already-partitioned
    zones and, if the pass stops early, the untouched remainder are scanned
    read-only for qualifying values. Exactly ``hi - lo + 1`` touches per
    call.

    Returns ``(new_l, new_r, done, pos, touched, swaps, out)``; ``pos`` is
    only meaningful when ``done`` is true.
    """
    out = np.empty(hi - lo + 1, dtype=np.int64)
    n_out = 0
    touched = 0
    swaps = 0

    for i in range(lo, cur_l):
        v = data[i]
        if low <= v and v < high:
            out[n_out] = v
            n_out += 1
        touched += 1
    for i in range(cur_r + 1, hi + 1):
        v = data[i]
        if low <= v and v < high:
            out[n_out] = v
            n_out += 1
        touched += 1

    left = cur_l
    right = cur_r
    while True:
        while left <= right and data[left] < pivot:
            v = data[left]
            if low <= v and v < high:
                out[n_out] = v
                n_out += 1
            left += 1
            touched += 1
        while left <= right and data[right] >= pivot:
            v = data[right]
            if low <= v and v < high:
                out[n_out] = v
                n_out += 1
            right -= 1
            touched += 1
        if left > right:
            break
        if swaps >= max_swaps:
            break
        tmp = data[left]
        data[left] = data[right]
        data[right] = tmp
        swaps += 1

    if left <= right:
        for i in range(left, right + 1):
            v = data[i]
            if low <= v and v < high:
                out[n_out] = v
                n_out += 1
            touched += 1
        return left, right, False, -1, touched, swaps, out[:n_out].copy()
    return left, right, True, left, touched, swaps, out[:n_out].copy()


def scan_filter(data, low, high):
    """Full scan materializing all values in ``[low, high)``.

    Returns ``(out, touched)`` with ``touched == len(data)``.
    """
    n = len(data)
    out = np.empty(n, dtype=np.int64)
    n_out = 0
    for i in range(n):
        v = data[i]
        if low <= v and v < high:
            out[n_out] = v
            n_out += 1
    return out[:n_out].copy(), n


def _insertion_sort(data, lo, hi):
    """Sort ``data[lo..hi]`` in place; returns (comparisons, shifts)."""
    touched = 0
    swaps = 0
    i = lo + 1
    while i <= hi:
        v = data[i]
        j = i - 1
        while j >= lo:
            touched += 1
            if data[j] > v:
                data[j + 1] = data[j]
                swaps += 1
                j -= 1
            else:
                break
        data[j + 1] = v
        i += 1
    return touched, swaps


def heapsort(data, lo, hi):
    """In-place heapsort of ``data[lo..hi]``; returns (comparisons, swaps).

    Deterministic O(n log n) for any input; used by the sort-once strategy
    so that its first-query cost is visible in logical metrics.
    """
    n = hi - lo + 1
    touched = 0
    swaps = 0
    if n < 2:
        return touched, swaps
    k = n // 2 - 1
    end = n - 1
    while True:
        if k >= 0:
            root = k
            k -= 1
        elif end > 0:
            tmp = data[lo]
            data[lo] = data[lo + end]
            data[lo + end] = tmp
            swaps += 1
            end -= 1
            root = 0
        else:
            break
        while True:
            child = 2 * root + 1
            if child > end:
                break
            if child + 1 <= end:
                touched += 1
                if data[lo + child] < data[lo + child + 1]:
                    child += 1
            touched += 1
            if data[lo + root] < data[lo + child]:
                tmp = data[lo + root]
                data[lo + root] = data[lo + child]
                data[lo + child] = tmp
                swaps += 1
                root = child
            else:
                break
    return touched, swaps


def _median3(a, b, c):
    """Middle value of three."""
    if a < b:
        if b < c:
            return b
        if a < c:
            return c
        return a
    if a < c:
        return a
    if b < c:
        return c
    return b


def _bit_length(n):
    bits = 0
    while n > 0:
        n >>= 1
        bits += 1
    return bits


def _mom_pivot(data, lo, hi):
    """Median-of-medians pivot value for ``data[lo..hi]``; rearranges the window.

    Groups of five are insertion-sorted and their medians gathered at the
    front of the window, then the median of those medians is selected
    recursively. Deterministic linear time.
    """
    n = hi - lo + 1
    if n <= 5:
        touched, swaps = _insertion_sort(data, lo, hi)
        return int(data[lo + n // 2]), touched, swaps
    touched = 0
    swaps = 0
    ngroups = 0
    i = lo
    while i <= hi:
        j = i + 4
        if j > hi:
            j = hi
        t, s = _insertion_sort(data, i, j)
        touched += t
        swaps += s
        mid = i + (j - i) // 2
        tmp = data[lo + ngroups]
        data[lo + ngroups] = data[mid]
        data[mid] = tmp
        swaps += 1
        ngroups += 1
        i += 5
    v, t, s = _mom_select(data, lo, lo + ngroups - 1, ngroups // 2)
    return v, touched + t, swaps + s


def _mom_select(data, lo, hi, rank):
    """Deterministic selection (median-of-medians pivots throughout)."""
    wlo = lo
    whi = hi
    target = lo + rank
    touched = 0
    swaps = 0
    while whi - wlo + 1 > _SELECT_CUTOFF:
        pv, t, s = _mom_pivot(data, wlo, whi)
        touched += t
        swaps += s
        p, t, s = partition(data, wlo, whi, pv)
        touched += t
        swaps += s
        if target < p:
            whi = p - 1
            continue
        if pv == I64_MAX:
            return pv, touched, swaps
        q, t, s = partition(data, p, whi, pv + 1)
        touched += t
        swaps += s
        if target < q:
            return pv, touched, swaps
        wlo = q
    t, s = _insertion_sort(data, wlo, whi)
    return int(data[target]), touched + t, swaps + s


def select_value(data, lo, hi, rank, depth_limit=-1):
    """Value of the ``rank``-th smallest element of ``data[lo..hi]`` (0-based).

    Introspective selection: quickselect with median-of-three pivots,
    escaping to deterministic median-of-medians selection when the
    iteration budget is exhausted. Rearranges the window. Expected linear
    time, linear worst case. Returns ``(value, touched, swaps)``.

    ``depth_limit`` overrides the escape budget (tests use 0 to force the
    median-of-medians path).
    """
    wlo = lo
    whi = hi
    target = lo + rank
    touched = 0
    swaps = 0
    if depth_limit < 0:
        depth_limit = 2 * _bit_length(hi - lo + 1)
    while whi - wlo + 1 > _SELECT_CUTOFF:
        if depth_limit <= 0:
            v, t, s = _mom_select(data, wlo, whi, target - wlo)
            return v, touched + t, swaps + s
        depth_limit -= 1
        mid = wlo + (whi - wlo) // 2
        pv = _median3(data[wlo], data[mid], data[whi])
        touched += 3
        p, t, s = partition(data, wlo, whi, pv)
        touched += t
        swaps += s
        if target < p:
            whi = p - 1
            continue
        if pv == I64_MAX:
            return int(pv), touched, swaps
        q, t, s = partition(data, p, whi, pv + 1)
        touched += t
        swaps += s
        if target < q:
            return int(pv), touched, swaps
        wlo = q
    t, s = _insertion_sort(data, wlo, whi)
    return int(data[target]), touched + t, swaps + s
