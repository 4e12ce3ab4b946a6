"""Selective stochastic cracking: apply the stochastic method only sometimes.

Wrappers around original cracking plus an inner stochastic strategy
(mdd1r by default):

* ``periodic`` - every X-th query is stochastic, the rest use original
  cracking (X=2 gives the alternating fifty-fifty schedule, X=1 is
  continuous stochastic cracking).
* ``flipcoin`` - a per-query seeded coin decides.
* ``scrackmon`` - per-piece crack counters; a piece that has been cracked X
  times is handled stochastically the next time a crack of it is requested,
  resetting the counter. New pieces inherit their parent's counter.
* ``sizeswitch`` - pieces larger than a threshold are handled
  stochastically, smaller ones with original cracking.
"""

from __future__ import annotations

from bisect import bisect_right, insort
from dataclasses import dataclass
from random import Random

from .baselines import CrackStrategy, Strategy, piecewise_select
from .stochastic import (
    Dd1cStrategy,
    Dd1rStrategy,
    DdcStrategy,
    DdrStrategy,
    Mdd1rStrategy,
    Pmdd1rStrategy,
    StochasticConfig,
)

_INNER_CLASSES = {
    "ddc": DdcStrategy,
    "ddr": DdrStrategy,
    "dd1c": Dd1cStrategy,
    "dd1r": Dd1rStrategy,
    "mdd1r": Mdd1rStrategy,
    "pmdd1r": Pmdd1rStrategy,
}

# materializing strategies usable for per-piece handling
_PIECEWISE_INNER = ("mdd1r", "pmdd1r")

_COIN_STREAM = 0x636F696E  # keeps coin flips off the inner strategy's stream


@dataclass(frozen=True)
class SelectiveConfig:
    inner: str = "mdd1r"
    period: int = 2
    coin_p: float = 0.5
    monitor_threshold: int = 10
    size_threshold: int = 8192

    def __post_init__(self):
        if self.inner not in _INNER_CLASSES:
            raise ValueError(f"unknown inner strategy {self.inner!r}")
        if self.period < 1:
            raise ValueError("period must be >= 1")
        if not (0.0 <= self.coin_p <= 1.0):
            raise ValueError("coin_p must be in [0, 1]")
        if self.monitor_threshold < 1:
            raise ValueError("monitor_threshold must be >= 1")
        if self.size_threshold < 0:
            raise ValueError("size_threshold must be >= 0")


def _make_inner(cfg: SelectiveConfig, stoch: StochasticConfig, seed: int, piecewise: bool):
    if piecewise and cfg.inner not in _PIECEWISE_INNER:
        raise ValueError(
            f"inner strategy {cfg.inner!r} cannot be applied per piece; "
            f"use one of {_PIECEWISE_INNER}"
        )
    return _INNER_CLASSES[cfg.inner](stoch, seed)


class PeriodicStrategy(Strategy):
    """Stochastic cracking on every ``period``-th query (1-based numbering)."""

    name = "periodic"

    def __init__(self, cfg: SelectiveConfig = None, stoch: StochasticConfig = None, seed: int = 1):
        cfg = cfg if cfg is not None else SelectiveConfig()
        self.period = cfg.period
        self.inner = _make_inner(cfg, stoch if stoch is not None else StochasticConfig(), seed, False)
        self.original = CrackStrategy()
        self.queries_seen = 0
        self.stochastic_queries = 0

    def select(self, col, q):
        self.queries_seen += 1
        use_inner = self.period == 1 or self.queries_seen % self.period == 0
        if use_inner:
            self.stochastic_queries += 1
            return self.inner.select(col, q)
        return self.original.select(col, q)


class FlipCoinStrategy(Strategy):
    """Per-query Bernoulli choice between the inner strategy and cracking."""

    name = "flipcoin"

    def __init__(self, cfg: SelectiveConfig = None, stoch: StochasticConfig = None, seed: int = 1):
        cfg = cfg if cfg is not None else SelectiveConfig()
        self.coin_p = cfg.coin_p
        self.coin = Random(seed ^ _COIN_STREAM)
        self.inner = _make_inner(cfg, stoch if stoch is not None else StochasticConfig(), seed, False)
        self.original = CrackStrategy()
        self.queries_seen = 0
        self.stochastic_queries = 0

    def select(self, col, q):
        self.queries_seen += 1
        if self.coin.random() < self.coin_p:
            self.stochastic_queries += 1
            return self.inner.select(col, q)
        return self.original.select(col, q)


class _PiecewiseSelective(Strategy):
    """Base for wrappers deciding original vs stochastic per end piece.

    Subclasses implement ``_choose``; decisions are recorded in
    ``self.decisions`` as ``(piece_lo, piece_size, used_stochastic)``.
    Instances are bound to a single column for their lifetime.
    """

    def __init__(self, cfg: SelectiveConfig = None, stoch: StochasticConfig = None, seed: int = 1):
        self.cfg = cfg if cfg is not None else SelectiveConfig()
        self.inner = _make_inner(self.cfg, stoch if stoch is not None else StochasticConfig(), seed, True)
        self.decisions: list[tuple[int, int, bool]] = []

    def _choose(self, col, piece):
        raise NotImplementedError

    def select(self, col, q):
        col.reset_query_counters()
        return piecewise_select(col, q, self._choose, self.inner.materialize_piece)


class SizeSwitchStrategy(_PiecewiseSelective):
    """Stochastic handling only for pieces above a size threshold."""

    name = "sizeswitch"

    def _choose(self, col, piece):
        use = piece.size > self.cfg.size_threshold
        self.decisions.append((piece.lo, piece.size, use))
        return use


class ScrackMonStrategy(_PiecewiseSelective):
    """Monitor per-piece crack counts and intervene on hot pieces.

    Every crack of a piece via original cracking bumps its counter; pieces
    created by a split inherit the splitting piece's counter. A crack
    request on a piece whose counter has reached the threshold is served
    stochastically instead and resets the counter (both children of the
    stochastic crack inherit the reset).
    """

    name = "scrackmon"

    def __init__(self, cfg: SelectiveConfig = None, stoch: StochasticConfig = None, seed: int = 1):
        super().__init__(cfg, stoch, seed)
        self.counters: dict[int, int] = {0: 0}
        self._keys: list[int] = [0]
        self._log_seen = 0
        self._col = None

    def _attach(self, col):
        self._col = col
        if col.crack_log is None:
            col.crack_log = []
        self._log_seen = len(col.crack_log)
        for piece in col.pieces():
            if piece.lo not in self.counters:
                self.counters[piece.lo] = 0
                insort(self._keys, piece.lo)

    def _sync(self, col):
        """Propagate counters to pieces created since the last look."""
        log = col.crack_log
        while self._log_seen < len(log):
            _value, pos = log[self._log_seen]
            self._log_seen += 1
            if pos in self.counters:
                continue
            parent = self._keys[bisect_right(self._keys, pos) - 1]
            self.counters[pos] = self.counters[parent]
            insort(self._keys, pos)

    def _choose(self, col, piece):
        if self._col is not col:
            self._attach(col)
        self._sync(col)
        count = self.counters[piece.lo]
        if count >= self.cfg.monitor_threshold:
            self.counters[piece.lo] = 0
            self.decisions.append((piece.lo, piece.size, True))
            return True
        self.counters[piece.lo] = count + 1
        self.decisions.append((piece.lo, piece.size, False))
        return False
