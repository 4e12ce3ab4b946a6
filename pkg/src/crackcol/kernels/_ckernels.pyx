# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled partition, selection and sort kernels.

Statement-for-statement mirror of ``_pykernels.py``; see that module for
the counting conventions. Both backends must produce identical layouts and
counters for every input.
"""

import numpy as np

I64_MAX = 2**63 - 1

cdef long long _I64_MAX = 9223372036854775807
cdef Py_ssize_t _SELECT_CUTOFF = 16


def partition(long long[::1] data, Py_ssize_t lo, Py_ssize_t hi, long long pivot):
    """Two-cursor in-place partition; see the pure twin for the contract."""
    cdef Py_ssize_t left = lo
    cdef Py_ssize_t right = hi
    cdef long long touched = 0
    cdef long long swaps = 0
    cdef long long tmp
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


def split_materialize(long long[::1] data, Py_ssize_t lo, Py_ssize_t hi,
                      long long pivot, long long low, long long high):
    """Partition around ``pivot`` while collecting values in ``[low, high)``."""
    out_arr = np.empty(hi - lo + 1, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef Py_ssize_t n_out = 0
    cdef Py_ssize_t left = lo
    cdef Py_ssize_t right = hi
    cdef long long touched = 0
    cdef long long swaps = 0
    cdef long long v, tmp
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
    return left, touched, swaps, out_arr[:n_out].copy()


def partial_split_materialize(long long[::1] data, Py_ssize_t lo, Py_ssize_t hi,
                              Py_ssize_t cur_l, Py_ssize_t cur_r, long long pivot,
                              long long low, long long high, long long max_swaps):
    """Budget-limited resumable split; see the pure twin for the contract."""
    out_arr = np.empty(hi - lo + 1, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef Py_ssize_t n_out = 0
    cdef long long touched = 0
    cdef long long swaps = 0
    cdef long long v, tmp
    cdef Py_ssize_t i

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

    cdef Py_ssize_t left = cur_l
    cdef Py_ssize_t right = cur_r
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
        return left, right, False, -1, touched, swaps, out_arr[:n_out].copy()
    return left, right, True, left, touched, swaps, out_arr[:n_out].copy()


def scan_filter(long long[::1] data, long long low, long long high):
    """Full scan materializing all values in ``[low, high)``."""
    cdef Py_ssize_t n = data.shape[0]
    out_arr = np.empty(n, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef Py_ssize_t n_out = 0
    cdef Py_ssize_t i
    cdef long long v
    for i in range(n):
        v = data[i]
        if low <= v and v < high:
            out[n_out] = v
            n_out += 1
    return out_arr[:n_out].copy(), n


cdef (long long, long long) _insertion_sort(long long[::1] data, Py_ssize_t lo, Py_ssize_t hi):
    cdef long long touched = 0
    cdef long long swaps = 0
    cdef Py_ssize_t i = lo + 1
    cdef Py_ssize_t j
    cdef long long v
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


def heapsort(long long[::1] data, Py_ssize_t lo, Py_ssize_t hi):
    """In-place heapsort of ``data[lo..hi]``; returns (comparisons, swaps)."""
    cdef Py_ssize_t n = hi - lo + 1
    cdef long long touched = 0
    cdef long long swaps = 0
    cdef Py_ssize_t k, end, root, child
    cdef long long tmp
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


cdef long long _median3(long long a, long long b, long long c):
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


cdef int _bit_length(Py_ssize_t n):
    cdef int bits = 0
    while n > 0:
        n >>= 1
        bits += 1
    return bits


cdef (long long, long long, long long) _partition_c(long long[::1] data, Py_ssize_t lo,
                                                    Py_ssize_t hi, long long pivot):
    cdef Py_ssize_t left = lo
    cdef Py_ssize_t right = hi
    cdef long long touched = 0
    cdef long long swaps = 0
    cdef long long tmp
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


cdef (long long, long long, long long) _mom_pivot(long long[::1] data, Py_ssize_t lo, Py_ssize_t hi):
    cdef Py_ssize_t n = hi - lo + 1
    cdef long long touched = 0
    cdef long long swaps = 0
    cdef long long t, s, v
    cdef Py_ssize_t ngroups, i, j, mid
    cdef long long tmp
    if n <= 5:
        t, s = _insertion_sort(data, lo, hi)
        return data[lo + n // 2], t, s
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


cdef (long long, long long, long long) _mom_select(long long[::1] data, Py_ssize_t lo,
                                                   Py_ssize_t hi, Py_ssize_t rank):
    cdef Py_ssize_t wlo = lo
    cdef Py_ssize_t whi = hi
    cdef Py_ssize_t target = lo + rank
    cdef long long touched = 0
    cdef long long swaps = 0
    cdef long long pv, t, s, p, q
    while whi - wlo + 1 > _SELECT_CUTOFF:
        pv, t, s = _mom_pivot(data, wlo, whi)
        touched += t
        swaps += s
        p, t, s = _partition_c(data, wlo, whi, pv)
        touched += t
        swaps += s
        if target < p:
            whi = p - 1
            continue
        if pv == _I64_MAX:
            return pv, touched, swaps
        q, t, s = _partition_c(data, <Py_ssize_t>p, whi, pv + 1)
        touched += t
        swaps += s
        if target < q:
            return pv, touched, swaps
        wlo = <Py_ssize_t>q
    t, s = _insertion_sort(data, wlo, whi)
    return data[target], touched + t, swaps + s


def select_value(long long[::1] data, Py_ssize_t lo, Py_ssize_t hi, Py_ssize_t rank,
                 long depth_limit=-1):
    """Introspective selection; see the pure twin for the contract."""
    cdef Py_ssize_t wlo = lo
    cdef Py_ssize_t whi = hi
    cdef Py_ssize_t target = lo + rank
    cdef long long touched = 0
    cdef long long swaps = 0
    cdef Py_ssize_t mid
    cdef long long pv, t, s, p, q, v
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
        p, t, s = _partition_c(data, wlo, whi, pv)
        touched += t
        swaps += s
        if target < p:
            whi = <Py_ssize_t>p - 1
            continue
        if pv == _I64_MAX:
            return pv, touched, swaps
        q, t, s = _partition_c(data, <Py_ssize_t>p, whi, pv + 1)
        touched += t
        swaps += s
        if target < q:
            return pv, touched, swaps
        wlo = <Py_ssize_t>q
    t, s = _insertion_sort(data, wlo, whi)
    return data[target], touched + t, swaps + s
