"""Time the compiled kernels against their pure-Python versions.

Inputs are taken from real workloads: the fiber-product joins and
collision scans of a full 2-Segal check, and the Hall structure-constant
count.  Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5] [--truncate 5]
"""
import argparse
import statistics
import time

import numpy as np

from segalsets import graphs, kernels, segal
from segalsets.segal import _csr, _triangulation_pieces


def join_inputs(K, n):
    """Recorded (rows, keys, offsets, items) for every join step at level ``n``."""
    calls = []
    for T in segal.enumerate_triangulations(n):
        pieces, _ = _triangulation_pieces(K, T)
        rows = np.arange(pieces[0].size, dtype=np.int64)[:, None]
        for piece in pieces[1:]:
            q, left, right, glue_size = piece.glue
            keys = np.ascontiguousarray(left[rows[:, q]])
            offsets, items = _csr(right, glue_size)
            rows = np.ascontiguousarray(rows)
            calls.append((rows, keys, offsets, items))
            rows = kernels.fiber_join(rows, keys, offsets, items)
    return calls


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times), statistics.median(times)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--truncate", "-N", type=int, default=5)
    args = p.parse_args()

    K = graphs.build_XG(graphs.triangle_graph(), args.truncate)
    calls = join_inputs(K, args.truncate)
    keys = np.random.default_rng(0).integers(0, 1 << 40, size=200_000).astype(np.int64)
    d0, d1, d2 = K.faces[2]
    n1 = K.size(1)

    workloads = {
        "fiber_join": lambda impl: [impl.fiber_join(*c) for c in calls],
        "first_repeat": lambda impl: impl.first_repeat(keys),
        "count_triples": lambda impl: impl.count_triples(d2, d0, d1, n1, n1, n1),
    }
    found = kernels.backends()
    print(f"input: {K.label}, sizes {K.sizes()}, {len(calls)} join steps at level {args.truncate}")
    print(f"backends: {', '.join(sorted(found))}")
    print(f"{'kernel':<15}{'backend':<10}{'best (ms)':>12}{'median (ms)':>14}{'speed-up':>10}")
    for name, work in workloads.items():
        baseline = None
        for backend in ("python", "compiled"):
            if backend not in found:
                continue
            best, med = best_of(lambda: work(found[backend]), args.repeat)
            baseline = best if backend == "python" else baseline
            ratio = f"{baseline / best:.1f}x" if baseline else ""
            print(f"{name:<15}{backend:<10}{best * 1e3:>12.2f}{med * 1e3:>14.2f}{ratio:>10}")

    start = time.perf_counter()
    segal.segal2_check(K)
    print(f"full 2-Segal check ({kernels.BACKEND} backend): {time.perf_counter() - start:.3f} s")


if __name__ == "__main__":
    main()
