"""Stochastic cracking: auxiliary data-driven or random cracks per query.

Variants, from most to least eager:

* ``ddc`` / ``ddr`` - recursively halve the piece holding each query bound
  (at the median / at a random pivot) until it is below the piece-size
  threshold, then crack at the bound.
* ``dd1c`` / ``dd1r`` - at most one auxiliary halving step, then the bound
  crack regardless of the resulting piece size.
* ``mdd1r`` - one random crack per touched end piece and no bound crack at
  all; qualifying end-piece values are materialized during the same pass.
* ``pmdd1r`` - mdd1r whose random crack on large pieces is completed
  progressively across queries under a per-query swap budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from . import kernels
from .baselines import Strategy, piecewise_select
from .column import Buffer, CrackedColumn, InFlightCrack, Piece

DEFAULT_CRACK_SIZE = 8192  # elements in one L1 cache worth of keys
DEFAULT_L2_SIZE = 65536  # elements in one L2 cache worth of keys

# consecutive no-progress random splits tolerated before giving up on a
# duplicate-heavy piece (a random pivot equal to the piece minimum splits
# nothing; on distinct values this practically never repeats)
_MAX_STALLED_SPLITS = 32


@dataclass(frozen=True)
class StochasticConfig:
    """Tuning knobs shared by the stochastic strategies.

    ``crack_size`` is the piece-size threshold below which auxiliary
    cracking stops; ``l2_size`` is the progressive cutoff: pieces at or
    below it are always cracked in one go. ``swap_frac`` is the progressive
    per-query swap budget as a fraction of the current piece size.
    """

    crack_size: int = DEFAULT_CRACK_SIZE
    l2_size: int = DEFAULT_L2_SIZE
    swap_frac: float = 0.1

    def __post_init__(self):
        if self.crack_size < 1:
            raise ValueError("crack_size must be >= 1")
        if self.l2_size < self.crack_size:
            raise ValueError("l2_size must be >= crack_size")
        if not (0.0 < self.swap_frac <= 1.0):
            raise ValueError("swap_frac must be in (0, 1]")

    def swap_budget(self, piece_size: int) -> int:
        """Ceiling of ``swap_frac * piece_size``, computed exactly.

        Exact decimal arithmetic: float rounding must not inflate the
        ceiling (0.01 * 10**6 is 10000.000000000002 in binary floats).
        """
        return math.ceil(Fraction(str(self.swap_frac)) * piece_size)


def median_partition(col: CrackedColumn, piece: Piece) -> int:
    """Crack ``piece`` at its median value; returns the crack position.

    The median is found by introspective selection in expected linear time
    (deterministic median-of-medians escape), then the piece is partitioned
    around it like any other crack. On distinct values the position is
    ``piece.lo + piece.size // 2``. Single-element pieces are left alone.
    """
    pos, _value = _median_partition(col, piece)
    return pos


def _median_partition(col, piece):
    if piece.size < 2:
        return piece.lo, None
    value, touched, swaps = kernels.select_value(
        col.data, piece.lo, piece.hi, piece.size // 2
    )
    col.counters.tuples_touched += touched
    col.counters.swaps += swaps
    pos = col.crack_in_two(piece, value)
    return pos, value


def _descend(piece, pos, pivot, value):
    """Child piece of ``piece`` (split at ``pos`` on ``pivot``) holding ``value``."""
    if value < pivot:
        return Piece(piece.lo, pos - 1, piece.vlo, pivot)
    return Piece(pos, piece.hi, pivot, piece.vhi)


def ddc_crack(col: CrackedColumn, value, cfg: StochasticConfig) -> int:
    """Bound crack with recursive median pre-cracks (data-driven center).

    While the piece holding ``value`` exceeds ``cfg.crack_size`` it is
    halved at its median and the half holding ``value`` is descended into;
    finally the piece is cracked at ``value`` itself.
    """
    pos = col.lookup_crack(value)
    if pos is not None:
        return pos
    piece = col.find_piece(value)
    while piece.size > cfg.crack_size:
        pos, pivot = _median_partition(col, piece)
        if pos <= piece.lo:
            break  # duplicate-heavy piece: the median equals the minimum
        piece = _descend(piece, pos, pivot, value)
    return col.crack_in_two(piece, value)


def ddr_crack(col: CrackedColumn, value, cfg: StochasticConfig, rng: Random) -> int:
    """Bound crack with recursive random pre-cracks (data-driven random)."""
    pos = col.lookup_crack(value)
    if pos is not None:
        return pos
    piece = col.find_piece(value)
    stalls = 0
    while piece.size > cfg.crack_size:
        pivot = int(col.data[piece.lo + rng.randrange(piece.size)])
        pos = col.crack_in_two(piece, pivot)
        if pos <= piece.lo:
            stalls += 1
            if stalls >= _MAX_STALLED_SPLITS:
                break
            continue
        stalls = 0
        piece = _descend(piece, pos, pivot, value)
    hit = col.lookup_crack(value)
    if hit is not None:
        return hit
    return col.crack_in_two(piece, value)


def _dd1_crack(col, value, cfg, centered, rng):
    """Bound crack with at most one auxiliary pre-crack."""
    pos = col.lookup_crack(value)
    if pos is not None:
        return pos
    piece = col.find_piece(value)
    if piece.size > cfg.crack_size:
        if centered:
            pos, pivot = _median_partition(col, piece)
        else:
            pivot = int(col.data[piece.lo + rng.randrange(piece.size)])
            pos = col.crack_in_two(piece, pivot)
        if pos > piece.lo:
            piece = _descend(piece, pos, pivot, value)
    hit = col.lookup_crack(value)
    if hit is not None:
        return hit
    return col.crack_in_two(piece, value)


def split_and_materialize(col, piece, q, rng) -> tuple[Buffer, int]:
    """One random crack of ``piece`` collecting values in ``[q.low, q.high)``.

    The pivot is the value at a uniformly random position of the piece; the
    partition and the qualification checks happen in a single pass over the
    piece. Returns the collected buffer and the crack position.
    """
    pivot = int(col.data[piece.lo + rng.randrange(piece.size)])
    pos, touched, swaps, out = kernels.split_materialize(
        col.data, piece.lo, piece.hi, pivot, q.low, q.high
    )
    col.counters.tuples_touched += touched
    col.counters.swaps += swaps
    col.add_crack(pivot, pos)
    return Buffer(out), pos


class _BoundCrackStrategy(Strategy):
    """Common shape of the view-returning stochastic strategies."""

    def __init__(self, cfg: StochasticConfig = None, seed: int = 1):
        self.cfg = cfg if cfg is not None else StochasticConfig()
        self.rng = Random(seed)

    def _crack(self, col, value):
        raise NotImplementedError

    def select(self, col, q):
        col.reset_query_counters()
        pos_low = self._crack(col, q.low)
        pos_high = self._crack(col, q.high)
        return col.make_view(pos_low, pos_high)


class DdcStrategy(_BoundCrackStrategy):
    name = "ddc"

    def _crack(self, col, value):
        return ddc_crack(col, value, self.cfg)


class DdrStrategy(_BoundCrackStrategy):
    name = "ddr"

    def _crack(self, col, value):
        return ddr_crack(col, value, self.cfg, self.rng)


class Dd1cStrategy(_BoundCrackStrategy):
    name = "dd1c"

    def _crack(self, col, value):
        return _dd1_crack(col, value, self.cfg, True, self.rng)


class Dd1rStrategy(_BoundCrackStrategy):
    name = "dd1r"

    def _crack(self, col, value):
        return _dd1_crack(col, value, self.cfg, False, self.rng)


def _always(col, piece):
    return True


class Mdd1rStrategy(Strategy):
    """Materializing single-random-crack strategy.

    Every touched end piece receives one random crack while its qualifying
    values are collected; query bounds are never cracked on. Fully covered
    pieces (bounds sitting on existing cracks) are returned as views.
    """

    name = "mdd1r"

    def __init__(self, cfg: StochasticConfig = None, seed: int = 1):
        self.cfg = cfg if cfg is not None else StochasticConfig()
        self.rng = Random(seed)

    def materialize_piece(self, col, piece, q) -> Buffer:
        buf, _pos = split_and_materialize(col, piece, q, self.rng)
        return buf

    def select(self, col, q):
        col.reset_query_counters()
        return piecewise_select(col, q, _always, self.materialize_piece)


class Pmdd1rStrategy(Mdd1rStrategy):
    """Progressive mdd1r: large pieces are cracked across multiple queries.

    A piece above ``l2_size`` gets an in-flight crack (fresh random pivot,
    or the one already stored for the piece) advanced by at most
    ``ceil(swap_frac * piece_size)`` swaps; the query is still answered
    completely by scanning the piece's unfinished region read-only. With a
    100% budget every crack completes immediately and the behavior is
    exactly mdd1r.
    """

    name = "pmdd1r"

    def materialize_piece(self, col, piece, q) -> Buffer:
        if piece.size <= self.cfg.l2_size:
            buf, _pos = split_and_materialize(col, piece, q, self.rng)
            return buf
        fl = col.inflight.get(piece.lo)
        if fl is None:
            pivot = int(col.data[piece.lo + self.rng.randrange(piece.size)])
            cur_l, cur_r, done_swaps = piece.lo, piece.hi, 0
        else:
            pivot, cur_l, cur_r, done_swaps = fl.pivot, fl.cur_l, fl.cur_r, fl.swaps_done
        budget = self.cfg.swap_budget(piece.size)
        new_l, new_r, done, pos, touched, swaps, out = kernels.partial_split_materialize(
            col.data, piece.lo, piece.hi, cur_l, cur_r, pivot, q.low, q.high, budget
        )
        col.counters.tuples_touched += touched
        col.counters.swaps += swaps
        if done:
            col.inflight.pop(piece.lo, None)
            col.add_crack(pivot, pos)
        else:
            col.inflight[piece.lo] = InFlightCrack(pivot, new_l, new_r, done_swaps + swaps)
        return Buffer(out)
