"""Synthetic query-sequence generators and trace-file ingestion.

Every pattern yields ``count`` half-open ranges ``[p, p + width)`` clamped
to the value domain. With ``D`` the domain size, ``k`` the query count and
``s = D/k`` the stride (integer arithmetic throughout):

* ``random``      - positions uniform over the domain.
* ``sequential``  - left-to-right sweep, ``p_i = lo + (i-1)s``.
* ``seqreverse``  - the same sweep right-to-left.
* ``seqrandom``   - the sequential positions visited in random order.
* ``zoomin``      - alternating ends converging on the center.
* ``zoomout``     - starting at the center, alternating outward.
* ``zoominalt`` / ``zoomoutalt`` - the domain is split into consecutive
  equal sub-regions of 100 queries each, visited round-robin, with the
  zoom pattern advancing independently inside each.
* ``seqzoomin`` / ``seqzoomout`` - sub-regions visited left-to-right, the
  zoom pattern run to completion inside each.
* ``periodic``    - sequential sweep at 10x stride, wrapping around the
  domain (ten passes).
* ``skew``        - positions ``lo + floor(D * u^4)``, hotspot at the low end.
* ``skewzoomoutalt`` - zoomoutalt with the sub-region drawn from the skew
  distribution instead of round-robin.
* ``mixed``       - a fresh uniformly drawn pattern every ``mixed_block``
  queries.

Real predicate traces are loaded with :func:`load_query_file` instead of
generated.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .column import QueryRange

PATTERNS = (
    "random",
    "sequential",
    "seqreverse",
    "seqrandom",
    "seqzoomin",
    "seqzoomout",
    "skew",
    "zoomin",
    "zoomout",
    "zoominalt",
    "zoomoutalt",
    "periodic",
    "skewzoomoutalt",
    "mixed",
)

# queries spent inside one sub-region of the *alt and seqzoom* patterns
SUBREGION_QUERIES = 100


@dataclass(frozen=True)
class WorkloadSpec:
    """Parameters of one synthetic query sequence."""

    pattern: str
    domain_lo: int
    domain_hi: int
    width: int
    count: int
    seed: int = 1
    mixed_block: int = 1000

    def __post_init__(self):
        if self.pattern not in PATTERNS:
            raise ValueError(f"unknown workload pattern {self.pattern!r}")
        if self.domain_lo >= self.domain_hi:
            raise ValueError("empty value domain")
        if not (0 < self.width <= self.domain_hi - self.domain_lo):
            raise ValueError("width must be in (0, domain size]")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.mixed_block < 1:
            raise ValueError("mixed_block must be >= 1")


def generate(spec: WorkloadSpec):
    """Yield the spec's queries in order; deterministic for a given seed."""
    return _GENERATORS[spec.pattern](spec)


def _clamp(spec, p):
    top = spec.domain_hi - spec.width
    if p < spec.domain_lo:
        p = spec.domain_lo
    elif p > top:
        p = top
    return QueryRange(p, p + spec.width)


def _gen_random(spec):
    rng = Random(spec.seed)
    span = spec.domain_hi - spec.domain_lo - spec.width + 1
    for _ in range(spec.count):
        yield _clamp(spec, spec.domain_lo + rng.randrange(span))


def _sequential_pos(spec, i):
    d = spec.domain_hi - spec.domain_lo
    return spec.domain_lo + ((i - 1) * d) // spec.count


def _gen_sequential(spec):
    for i in range(1, spec.count + 1):
        yield _clamp(spec, _sequential_pos(spec, i))


def _gen_seqreverse(spec):
    d = spec.domain_hi - spec.domain_lo
    for i in range(1, spec.count + 1):
        yield _clamp(spec, spec.domain_hi - spec.width - ((i - 1) * d) // spec.count)


def _gen_seqrandom(spec):
    rng = Random(spec.seed)
    positions = [_sequential_pos(spec, i) for i in range(1, spec.count + 1)]
    rng.shuffle(positions)
    for p in positions:
        yield _clamp(spec, p)


def _zoom_pos(rlo, rhi, width, steps, j, outward):
    """Position of 1-based step ``j`` of a zoom over ``[rlo, rhi)``."""
    d = rhi - rlo
    jj = (j + 1) // 2
    if outward:
        mid = rlo + d // 2
        if j % 2 == 1:
            return mid - (jj * d) // steps
        return mid + (jj * d) // steps
    if j % 2 == 1:
        return rlo + (jj * d) // steps
    return rhi - width - (jj * d) // steps


def _gen_zoom(spec, outward):
    for i in range(1, spec.count + 1):
        yield _clamp(
            spec,
            _zoom_pos(spec.domain_lo, spec.domain_hi, spec.width, spec.count, i, outward),
        )


def _region_bounds(spec, r, nregions):
    d = spec.domain_hi - spec.domain_lo
    rlo = spec.domain_lo + (r * d) // nregions
    rhi = spec.domain_lo + ((r + 1) * d) // nregions
    return rlo, rhi


def _region_query(spec, r, nregions, step, outward):
    rlo, rhi = _region_bounds(spec, r, nregions)
    p = _zoom_pos(rlo, rhi, spec.width, SUBREGION_QUERIES, step, outward)
    top = rhi - spec.width
    if p > top:
        p = top
    if p < rlo:
        p = rlo
    return _clamp(spec, p)


def _gen_zoom_alt(spec, outward):
    # round-robin over sub-regions, zoom progress kept per region
    nregions = -(-spec.count // SUBREGION_QUERIES)
    steps = [0] * nregions
    for i in range(spec.count):
        r = i % nregions
        steps[r] += 1
        yield _region_query(spec, r, nregions, steps[r], outward)


def _gen_seqzoom(spec, outward):
    nregions = -(-spec.count // SUBREGION_QUERIES)
    for i in range(spec.count):
        r = i // SUBREGION_QUERIES
        step = i % SUBREGION_QUERIES + 1
        yield _region_query(spec, r, nregions, step, outward)


def _gen_periodic(spec):
    d = spec.domain_hi - spec.domain_lo
    for i in range(1, spec.count + 1):
        p = spec.domain_lo + (((i - 1) * 10 * d) // spec.count) % d
        yield _clamp(spec, p)


def _gen_skew(spec):
    rng = Random(spec.seed)
    d = spec.domain_hi - spec.domain_lo
    for _ in range(spec.count):
        u = rng.random()
        yield _clamp(spec, spec.domain_lo + int(d * u**4))


def _gen_skewzoomoutalt(spec):
    rng = Random(spec.seed)
    nregions = -(-spec.count // SUBREGION_QUERIES)
    steps = [0] * nregions
    for _ in range(spec.count):
        u = rng.random()
        r = min(int(nregions * u**4), nregions - 1)
        steps[r] += 1
        yield _region_query(spec, r, nregions, steps[r], True)


def mixed_plan(spec) -> list[tuple[str, int, int]]:
    """Block schedule of a mixed workload: (pattern, sub-seed, length) triples."""
    pool = [p for p in PATTERNS if p != "mixed"]
    rng = Random(spec.seed)
    blocks = []
    remaining = spec.count
    while remaining > 0:
        length = min(spec.mixed_block, remaining)
        pattern = pool[rng.randrange(len(pool))]
        blocks.append((pattern, rng.getrandbits(63), length))
        remaining -= length
    return blocks


def _gen_mixed(spec):
    for pattern, sub_seed, length in mixed_plan(spec):
        sub = WorkloadSpec(
            pattern,
            spec.domain_lo,
            spec.domain_hi,
            spec.width,
            length,
            seed=sub_seed,
            mixed_block=spec.mixed_block,
        )
        yield from generate(sub)


_GENERATORS = {
    "random": _gen_random,
    "sequential": _gen_sequential,
    "seqreverse": _gen_seqreverse,
    "seqrandom": _gen_seqrandom,
    "seqzoomin": lambda spec: _gen_seqzoom(spec, False),
    "seqzoomout": lambda spec: _gen_seqzoom(spec, True),
    "skew": _gen_skew,
    "zoomin": lambda spec: _gen_zoom(spec, False),
    "zoomout": lambda spec: _gen_zoom(spec, True),
    "zoominalt": lambda spec: _gen_zoom_alt(spec, False),
    "zoomoutalt": lambda spec: _gen_zoom_alt(spec, True),
    "periodic": _gen_periodic,
    "skewzoomoutalt": _gen_skewzoomoutalt,
    "mixed": _gen_mixed,
}


def load_query_file(path) -> list[QueryRange]:
    """Parse a trace file: one ``low high`` pair per line, ``#`` comments.

    Bounds are half-open ``[low, high)`` and applied in file order.
    """
    queries = []
    with open(path) as fh:
        for ln, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{ln}: expected 'low high', got {text!r}")
            try:
                low, high = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(f"{path}:{ln}: non-integer bound in {text!r}") from None
            if low > high:
                raise ValueError(f"{path}:{ln}: low {low} exceeds high {high}")
            queries.append(QueryRange(low, high))
    return queries
