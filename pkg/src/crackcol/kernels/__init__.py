"""Hot-loop kernels with backend selection.

The compiled Cython extension is preferred; the pure-Python module is a
drop-in behavioral twin used when the extension is unavailable (or when
``CRACKCOL_PURE_KERNELS=1`` is set, e.g. for the backend benchmark).
"""

import os

if os.environ.get("CRACKCOL_PURE_KERNELS", "") not in ("", "0"):
    from . import _pykernels as _impl

    BACKEND = "pure"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import _pykernels as _impl

        BACKEND = "pure"

I64_MAX = _impl.I64_MAX
partition = _impl.partition
split_materialize = _impl.split_materialize
partial_split_materialize = _impl.partial_split_materialize
scan_filter = _impl.scan_filter
heapsort = _impl.heapsort
select_value = _impl.select_value

__all__ = [
    "BACKEND",
    "I64_MAX",
    "partition",
    "split_materialize",
    "partial_split_materialize",
    "scan_filter",
    "heapsort",
    "select_value",
]
