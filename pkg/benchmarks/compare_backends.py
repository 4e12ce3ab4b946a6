"""Compare the compiled kernel backend against the pure-Python fallback.

Times the individual hot kernels on shuffled arrays plus one end-to-end
cracking run, and prints a speedup table. Usage:

    python benchmarks/compare_backends.py [--sizes 10000,100000]
"""

import argparse
import time

import numpy as np

from crackcol.kernels import _pykernels

try:
    from crackcol.kernels import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, reps):
    results = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        results.append(time.perf_counter() - t0)
    return min(results)


def shuffled(n, seed=0):
    return np.random.default_rng(seed).permutation(n)


def kernel_cases(n):
    base = shuffled(n)

    def fresh():
        return base.copy()

    return [
        ("partition", lambda k: k.partition(fresh(), 0, n - 1, n // 2)),
        ("split_materialize", lambda k: k.split_materialize(fresh(), 0, n - 1, n // 2, n // 4, n // 3)),
        (
            "partial_split (10% budget)",
            lambda k: k.partial_split_materialize(
                fresh(), 0, n - 1, 0, n - 1, n // 2, n // 4, n // 3, n // 10
            ),
        ),
        ("select_value (median)", lambda k: k.select_value(fresh(), 0, n - 1, n // 2)),
        ("heapsort", lambda k: k.heapsort(fresh(), 0, n - 1)),
        ("scan_filter", lambda k: k.scan_filter(base, n // 4, n // 3)),
    ]


def crack_run(kernel_module, n, queries):
    """End-to-end sequential cracking run pinned to one backend."""
    import crackcol.kernels as kernels
    from crackcol import CrackedColumn, QueryRange, make_strategy

    saved = {name: getattr(kernels, name) for name in kernels.__all__ if name != "BACKEND"}
    for name in saved:
        setattr(kernels, name, getattr(kernel_module, name))
    try:
        col = CrackedColumn(shuffled(n))
        strategy = make_strategy("crack")
        stride = n // queries
        for i in range(queries):
            strategy.select(col, QueryRange(i * stride, i * stride + 10))
    finally:
        for name, fn in saved.items():
            setattr(kernels, name, fn)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="10000,100000")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _ckernels is None:
        print("compiled backend not available; nothing to compare")
        return

    print(f"{'kernel':<34} {'n':>8} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for n in sizes:
        for name, call in kernel_cases(n):
            pure = best_of(lambda: call(_pykernels), 1)
            comp = best_of(lambda: call(_ckernels), 3)
            print(f"{name:<34} {n:>8} {pure:>10.4f} {comp:>13.6f} {pure / comp:>7.0f}x")
    n, queries = 100_000, 200
    pure = best_of(lambda: crack_run(_pykernels, n, queries), 1)
    comp = best_of(lambda: crack_run(_ckernels, n, queries), 3)
    print(
        f"{'crack run, sequential, 200 queries':<34} {n:>8} {pure:>10.4f} "
        f"{comp:>13.6f} {pure / comp:>7.0f}x"
    )


if __name__ == "__main__":
    main()
