"""In-memory column-store selection with adaptive indexing.

The select operator doubles as an index builder: every query partially
reorganizes ("cracks") the column it touches. Besides original query-driven
cracking and the scan/sort baselines, the package provides the stochastic
family (auxiliary median or random cracks, materializing and progressive
variants) and selective wrappers, plus workload generators and a benchmark
CLI built around deterministic per-query work metrics.
"""

from .bench import (
    CSV_HEADER,
    QueryMetrics,
    RunConfig,
    STRATEGY_NAMES,
    VerificationFailure,
    csv_text,
    make_strategy,
    run_benchmark,
    run_verify,
    write_csv,
)
from .column import (
    Buffer,
    Counters,
    CrackedColumn,
    InFlightCrack,
    Piece,
    QueryRange,
    ResultSet,
    SoundnessError,
    View,
    load_values,
)
from .kernels import BACKEND
from .selective import SelectiveConfig
from .stochastic import StochasticConfig
from .verify import Oracle, check_index_sound, check_permutation
from .workloads import PATTERNS, WorkloadSpec, generate, load_query_file, mixed_plan

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Buffer",
    "CSV_HEADER",
    "Counters",
    "CrackedColumn",
    "InFlightCrack",
    "Oracle",
    "PATTERNS",
    "Piece",
    "QueryMetrics",
    "QueryRange",
    "ResultSet",
    "RunConfig",
    "STRATEGY_NAMES",
    "SelectiveConfig",
    "SoundnessError",
    "StochasticConfig",
    "VerificationFailure",
    "View",
    "WorkloadSpec",
    "check_index_sound",
    "check_permutation",
    "csv_text",
    "generate",
    "load_query_file",
    "load_values",
    "make_strategy",
    "mixed_plan",
    "run_benchmark",
    "run_verify",
    "write_csv",
]
