"""Reference selection strategies: full scan, sort-once, query-driven cracking.

Also hosts the piece-wise select flow shared with the stochastic and
selective strategies: locate the piece holding each query bound, process it
(bound crack or materializing split), and return a view over the fully
covered middle.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .column import Buffer, CrackedColumn, QueryRange, ResultSet, View


class Strategy:
    """Select-operator implementation bound to one column for one run."""

    name = "?"

    def select(self, col: CrackedColumn, q: QueryRange) -> ResultSet:
        raise NotImplementedError

    def piece_count(self, col: CrackedColumn) -> int:
        return col.piece_count()


def crack_bound(col: CrackedColumn, value) -> int:
    """Crack position for a query bound, cracking its piece when needed.

    A bound equal to an existing crack value is answered from the index
    without touching data (idempotent re-query).
    """
    pos = col.lookup_crack(value)
    if pos is not None:
        return pos
    return col.crack_in_two(col.find_piece(value), value)


def piecewise_select(col, q, choose, materialize_piece) -> ResultSet:
    """Answer ``q`` piece by piece.

    Each end piece goes through ``choose(col, piece)``: False means a
    query-bound crack (original cracking), True means the strategy's
    materializing handler ``materialize_piece(col, piece, q)``, which must
    collect the piece's qualifying values and may reorganize the piece but
    adds no bound crack. Middle pieces are returned as a view untouched. A
    bound sitting exactly on a crack contributes no work at all.
    """
    low, high = q.low, q.high
    left_buf = None
    right_buf = None

    pos = col.lookup_crack(low)
    if pos is not None:
        view_start = pos
    else:
        piece = col.find_piece(low)
        if choose(col, piece):
            buf = materialize_piece(col, piece, q)
            if piece.vhi is None or high < piece.vhi:
                # the same piece holds both bounds: fully materialized
                return ResultSet(col, [buf])
            left_buf = buf
            view_start = piece.hi + 1
        else:
            view_start = col.crack_in_two(piece, low)

    pos = col.lookup_crack(high)
    if pos is not None:
        view_end = pos
    else:
        # re-locate: the low-bound crack may have split the original piece
        piece = col.find_piece(high)
        if choose(col, piece):
            right_buf = materialize_piece(col, piece, q)
            # the piece still holds the low bound when its crack was dropped
            # at a piece edge; the buffer then already covers everything
            view_end = piece.lo if piece.lo >= view_start else view_start
        else:
            view_end = col.crack_in_two(piece, high)

    segments = []
    if left_buf is not None:
        segments.append(left_buf)
    segments.append(View(view_start, view_end))
    if right_buf is not None:
        segments.append(right_buf)
    return ResultSet(col, segments)


def _never(col, piece):
    return False


class ScanStrategy(Strategy):
    """Always scan the whole column and materialize the result."""

    name = "scan"

    def select(self, col, q):
        col.reset_query_counters()
        out, touched = kernels.scan_filter(col.data, q.low, q.high)
        col.counters.tuples_touched += touched
        return ResultSet(col, [Buffer(out)])


class SortStrategy(Strategy):
    """Sort the column with the first query, then answer by binary search.

    The sort's comparisons are charged to ``tuples_touched`` so the heavy
    first query shows up in logical metrics; binary searches afterwards are
    index navigation and cost nothing.
    """

    name = "sort"

    def __init__(self):
        self.sorted = False

    def select(self, col, q):
        col.reset_query_counters()
        if not self.sorted:
            touched, swaps = kernels.heapsort(col.data, 0, col.n - 1)
            col.counters.tuples_touched += touched
            col.counters.swaps += swaps
            self.sorted = True
        lo = int(np.searchsorted(col.data, q.low, side="left"))
        hi = int(np.searchsorted(col.data, q.high, side="left"))
        return col.make_view(lo, hi)

    def piece_count(self, col):
        # fully ordered: every position is a piece boundary
        return col.n if self.sorted else col.piece_count()


class CrackStrategy(Strategy):
    """Original query-driven cracking: crack end pieces at the query bounds."""

    name = "crack"

    def select(self, col, q):
        col.reset_query_counters()
        return piecewise_select(col, q, _never, None)
