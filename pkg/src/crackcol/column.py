"""Cracked column core: dense value array, cracker index, partition primitives.

A :class:`CrackedColumn` owns a dense int64 array that is physically
reorganized in place as queries arrive. The cracker index maps crack values
to array positions: an entry ``(w, p)`` asserts that every element before
position ``p`` is ``< w`` and every element from ``p`` on is ``>= w``.
Adjacent entries delimit the column's pieces.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

import numpy as np

from . import kernels


class SoundnessError(RuntimeError):
    """A crack that would contradict the cracker-index invariant.

    Indicates a programming bug in a partition routine, never a data error;
    the offending query is aborted.
    """


@dataclass(frozen=True)
class Piece:
    """A maximal contiguous region between adjacent cracks.

    ``lo``/``hi`` are inclusive positions. ``vlo`` (inclusive) and ``vhi``
    (exclusive) bound the values stored in the piece; ``None`` means
    unbounded on that side (first/last piece).
    """

    lo: int
    hi: int
    vlo: int | None
    vhi: int | None

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1


@dataclass(frozen=True)
class QueryRange:
    """Half-open value interval ``[low, high)`` of a select."""

    low: int
    high: int

    def __post_init__(self):
        if self.low > self.high:
            raise ValueError(f"invalid query range [{self.low}, {self.high})")


@dataclass(frozen=True)
class View:
    """Half-open position range into the column; no data copied."""

    lo: int
    hi: int

    @property
    def size(self) -> int:
        return self.hi - self.lo


@dataclass(frozen=True)
class Buffer:
    """Owned array of materialized result values."""

    values: np.ndarray

    @property
    def size(self) -> int:
        return int(self.values.size)


@dataclass
class ResultSet:
    """Ordered result segments (views and buffers) of one select.

    Views reference column positions and stay valid only until the next
    reorganizing operation on the column; materialize first if the values
    are needed later. Results are compared as multisets.
    """

    column: "CrackedColumn"
    segments: list

    @property
    def count(self) -> int:
        return sum(seg.size for seg in self.segments)

    def materialize(self) -> np.ndarray:
        parts = []
        for seg in self.segments:
            if isinstance(seg, View):
                parts.append(self.column.data[seg.lo:seg.hi])
            else:
                parts.append(seg.values)
        if not parts:
            return np.empty(0, dtype=np.int64)
        return np.concatenate(parts)


@dataclass
class Counters:
    """Per-query instrumentation; reset at the start of every select."""

    tuples_touched: int = 0
    swaps: int = 0
    cracks_added: int = 0

    def reset(self):
        self.tuples_touched = 0
        self.swaps = 0
        self.cracks_added = 0


@dataclass
class InFlightCrack:
    """A partially completed partition, resumed by later queries.

    Within the owning piece, positions ``[piece.lo, cur_l)`` already hold
    values ``< pivot`` and ``(cur_r, piece.hi]`` values ``>= pivot``;
    ``[cur_l, cur_r]`` is unprocessed.
    """

    pivot: int
    cur_l: int
    cur_r: int
    swaps_done: int = 0


class CrackedColumn:
    """Mutable value array plus cracker index and instrumentation.

    A column is exclusively owned while a select runs (every select may
    reorganize it in place); independent columns may be used concurrently.
    """

    def __init__(self, values):
        data = np.array(values, dtype=np.int64)
        if data.ndim != 1 or data.size == 0:
            raise ValueError("empty column")
        self.data = data
        self.crack_values: list[int] = []
        self.crack_positions: list[int] = []
        self.inflight: dict[int, InFlightCrack] = {}
        self.counters = Counters()
        # optional audit trail of real index insertions, as (value, position)
        self.crack_log: list[tuple[int, int]] | None = None

    @property
    def n(self) -> int:
        return int(self.data.size)

    def __len__(self) -> int:
        return self.n

    def reset_query_counters(self):
        self.counters.reset()

    def piece_count(self) -> int:
        return len(self.crack_values) + 1

    def lookup_crack(self, value) -> int | None:
        """Position of an existing crack at exactly ``value``, if any."""
        i = bisect_left(self.crack_values, value)
        if i < len(self.crack_values) and self.crack_values[i] == value:
            return self.crack_positions[i]
        return None

    def find_piece(self, value) -> Piece:
        """The unique piece whose value range contains ``value``.

        A value equal to a crack value belongs to the piece starting at that
        crack (the ``>=`` side).
        """
        vals = self.crack_values
        poss = self.crack_positions
        j = bisect_right(vals, value)
        lo = poss[j - 1] if j > 0 else 0
        hi_excl = poss[j] if j < len(poss) else self.n
        vlo = vals[j - 1] if j > 0 else None
        vhi = vals[j] if j < len(vals) else None
        return Piece(lo, hi_excl - 1, vlo, vhi)

    def pieces(self) -> list[Piece]:
        """All pieces, in position order."""
        bounds = [0] + self.crack_positions + [self.n]
        vals = [None] + self.crack_values + [None]
        return [
            Piece(bounds[i], bounds[i + 1] - 1, vals[i], vals[i + 1])
            for i in range(len(bounds) - 1)
        ]

    def add_crack(self, value, pos) -> bool:
        """Register index entry ``(value, pos)``; returns True if inserted.

        Idempotent for duplicate values; cracks that would create a
        zero-width piece are silently dropped. A crack contradicting the
        stored data raises :class:`SoundnessError`.
        """
        vals = self.crack_values
        poss = self.crack_positions
        i = bisect_left(vals, value)
        if i < len(vals) and vals[i] == value:
            if poss[i] != pos:
                raise SoundnessError(
                    f"crack value {value} re-registered at {pos}, index has {poss[i]}"
                )
            return False
        if pos <= 0 or pos >= self.n:
            return False
        if i > 0 and poss[i - 1] == pos:
            return False
        if i < len(poss) and poss[i] == pos:
            return False
        if (i > 0 and poss[i - 1] > pos) or (i < len(poss) and poss[i] < pos):
            raise SoundnessError(f"crack ({value}, {pos}) crosses an existing crack")
        d = self.data
        if d[pos - 1] >= value:
            raise SoundnessError(
                f"crack ({value}, {pos}) unsound: data[{pos - 1}] = {int(d[pos - 1])}"
            )
        if d[pos] < value:
            raise SoundnessError(
                f"crack ({value}, {pos}) unsound: data[{pos}] = {int(d[pos])}"
            )
        vals.insert(i, value)
        poss.insert(i, pos)
        self.counters.cracks_added += 1
        if self.crack_log is not None:
            self.crack_log.append((value, pos))
        return True

    def crack_in_two(self, piece: Piece, pivot) -> int:
        """Partition ``piece`` around ``pivot`` and register the crack.

        Returns the crack position: within the piece, everything before it
        is ``< pivot`` and everything from it on is ``>= pivot``. On a
        column of distinct values the position always equals the global
        count of values below ``pivot``, independent of cracking history.
        """
        if (piece.vlo is not None and pivot < piece.vlo) or (
            piece.vhi is not None and pivot > piece.vhi
        ):
            raise ValueError("pivot out of piece range")
        pos, touched, swaps = kernels.partition(self.data, piece.lo, piece.hi, pivot)
        self.counters.tuples_touched += touched
        self.counters.swaps += swaps
        self.add_crack(pivot, pos)
        return pos

    def crack_in_three(self, piece: Piece, low, high) -> tuple[int, int]:
        """Split ``piece`` into ``< low``, ``[low, high)`` and ``>= high``.

        Two successive two-way cracks; returns both crack positions.
        """
        if low > high:
            raise ValueError("crack_in_three bounds out of order")
        p1 = self.crack_in_two(piece, low)
        if low == high or p1 > piece.hi:
            return p1, p1
        rest = Piece(p1, piece.hi, None, piece.vhi)
        p2 = self.crack_in_two(rest, high)
        return p1, p2

    def make_view(self, pos_low, pos_high) -> ResultSet:
        """Result as a single view over ``[pos_low, pos_high)``."""
        if not (0 <= pos_low <= pos_high <= self.n):
            raise ValueError(f"view [{pos_low}, {pos_high}) out of bounds")
        return ResultSet(self, [View(pos_low, pos_high)])


def load_values(path) -> np.ndarray:
    """Load column values from a text file, one decimal integer per line."""
    values = []
    with open(path) as fh:
        for ln, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                v = int(text)
            except ValueError:
                raise ValueError(f"{path}:{ln}: not an integer: {text!r}") from None
            if not (-(2**63) <= v < 2**63):
                raise ValueError(f"{path}:{ln}: value out of 64-bit range")
            values.append(v)
    if not values:
        raise ValueError(f"{path}: empty column")
    return np.array(values, dtype=np.int64)
