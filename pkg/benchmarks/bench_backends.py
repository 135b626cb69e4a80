#!/usr/bin/env python3
"""Benchmark the compiled comparator kernels against the NumPy fallback.

Times the two hot kernels (Euclidean and coincidence batch evaluation
against a reference point) at the shapes the experiment harness actually
uses, then a full accuracy sweep end to end on each backend.

Run:  python benchmarks/bench_backends.py
"""

import time

import numpy as np

from coinknn._kernels import _numpy as numpy_backend

try:
    from coinknn._kernels import _native as native_backend
except ImportError:
    native_backend = None


def best_of(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_kernels():
    rng = np.random.default_rng(1)
    print(f"{'kernel':<14} {'N':>7} {'M':>2} {'numpy':>10} {'native':>10} {'speedup':>8}")
    for n in (200, 2_000, 100_000):
        for m in (1, 2, 8):
            ref = rng.uniform(1.0, 10.0, m)
            pts = rng.uniform(0.1, 20.0, (n, m))
            loops = max(1, 200_000 // n)

            def euclid(backend):
                def run():
                    for _ in range(loops):
                        backend.euclidean_from_ref(ref, pts)

                return best_of(run) / loops

            def coinc(backend):
                def run():
                    for _ in range(loops):
                        backend.coincidence_from_ref(ref, pts, 3.0, 1.0)

                return best_of(run) / loops

            for name, fn in (("euclidean", euclid), ("coincidence", coinc)):
                t_np = fn(numpy_backend)
                if native_backend is None:
                    print(f"{name:<14} {n:>7} {m:>2} {t_np*1e6:>8.1f}us {'n/a':>10}")
                    continue
                t_c = fn(native_backend)
                print(
                    f"{name:<14} {n:>7} {m:>2} {t_np*1e6:>8.1f}us "
                    f"{t_c*1e6:>8.1f}us {t_np/t_c:>7.1f}x"
                )


def bench_sweep():
    import os
    import subprocess
    import sys

    code = (
        "import time, coinknn as ck\n"
        "cfg = ck.ExperimentConfig(\n"
        "    group_a=ck.GroupConfig('A', (ck.Uniform(2, 4),), 100),\n"
        "    group_b=ck.GroupConfig('B', (ck.Uniform(4, 6),), 100),\n"
        "    transform=ck.Transform('square'),\n"
        "    comparators=(ck.Euclidean(), ck.CoincidenceDissimilarity()),\n"
        "    k_values=tuple(range(1, 101)),\n"
        "    realizations=1000,\n"
        "    master_seed=0,\n"
        ")\n"
        "start = time.perf_counter()\n"
        "ck.run_experiment(cfg)\n"
        "print(f'{ck.kernel_backend()}: full default sweep "
        "{time.perf_counter() - start:.2f}s')\n"
    )
    for backend in ("numpy", "native" if native_backend is not None else None):
        if backend is None:
            continue
        env = dict(os.environ, COINKNN_BACKEND=backend)
        subprocess.run([sys.executable, "-c", code], env=env, check=True)


if __name__ == "__main__":
    print("== kernel micro-benchmarks (best of 5) ==")
    bench_kernels()
    print("\n== end-to-end sweep (k=1..100, R=1000, N=200 pool) ==", flush=True)
    bench_sweep()
