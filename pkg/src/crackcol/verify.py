"""Independent oracles and whole-column invariant checks.

Everything here works from a pristine sorted copy of the load-time values
or from full scans; nothing consults the cracker index for answers, so
these checks stay independent of the code paths they validate.
"""

from __future__ import annotations

import numpy as np

from .column import CrackedColumn, QueryRange, ResultSet


class Oracle:
    """Ground truth for range selects over the original value multiset."""

    def __init__(self, values):
        pristine = np.sort(np.asarray(values, dtype=np.int64))
        pristine.flags.writeable = False
        self.pristine = pristine

    def bounds(self, q: QueryRange) -> tuple[int, int]:
        lo = int(np.searchsorted(self.pristine, q.low, side="left"))
        hi = int(np.searchsorted(self.pristine, q.high, side="left"))
        return lo, hi

    def count(self, q: QueryRange) -> int:
        lo, hi = self.bounds(q)
        return hi - lo

    def select(self, q: QueryRange) -> np.ndarray:
        """Qualifying values in sorted order."""
        lo, hi = self.bounds(q)
        return self.pristine[lo:hi]

    def matches(self, q: QueryRange, result: ResultSet) -> bool:
        """Multiset equality between a strategy's result and the truth."""
        expected = self.select(q)
        if result.count != expected.size:
            return False
        return bool(np.array_equal(np.sort(result.materialize()), expected))


def check_index_sound(col: CrackedColumn) -> str | None:
    """Verify every index entry against the stored data by full scan.

    For each entry ``(w, p)``: all of ``data[:p]`` must be ``< w`` and all
    of ``data[p:]`` must be ``>= w``. Returns None when sound, otherwise a
    report naming the first violating entry and position. O(n + cracks).
    """
    if not col.crack_values:
        return None
    data = col.data
    prefix_max = np.maximum.accumulate(data)
    suffix_min = np.minimum.accumulate(data[::-1])[::-1]
    for value, pos in zip(col.crack_values, col.crack_positions):
        if pos > 0 and prefix_max[pos - 1] >= value:
            bad = int(np.argmax(data[:pos] >= value))
            return (
                f"entry ({value}, {pos}): data[{bad}] = {int(data[bad])} "
                f"not below the crack value"
            )
        if pos < col.n and suffix_min[pos] < value:
            bad = pos + int(np.argmax(data[pos:] < value))
            return (
                f"entry ({value}, {pos}): data[{bad}] = {int(data[bad])} "
                f"below the crack value"
            )
    return None


def check_permutation(col: CrackedColumn, oracle: Oracle) -> str | None:
    """Verify the column still holds exactly the load-time multiset."""
    if col.n != oracle.pristine.size:
        return f"column size {col.n} != loaded size {oracle.pristine.size}"
    if bool(np.array_equal(np.sort(col.data), oracle.pristine)):
        return None
    diff = np.sort(col.data) != oracle.pristine
    bad = int(np.argmax(diff))
    return f"content drift: sorted rank {bad} differs from the loaded multiset"
