"""Compare the numba and numpy segment-pair kernels on real diagram data.

Usage: python3 benchmarks/bench_kernels.py [TYPE ...]
"""
import sys
import time

import numpy as np

from coxplane import kernels
from coxplane.core import build_coxeter_system
from coxplane.criteria import CriteriaContext
from coxplane.diagrams import build_diagrams


def all_pairs(ctx, fn):
    arrays = ctx.arrays
    keys = sorted(arrays)
    total = 0
    for i, a in enumerate(keys):
        _, ca, ka, _ = arrays[a]
        for b in keys[i + 1:]:
            _, cb, kb, _ = arrays[b]
            total += int(fn(ca, cb, ka, kb).sum())
    return total


def bench(label, repeat=3):
    ctx = CriteriaContext(build_diagrams(build_coxeter_system(label)))
    kernels.classify_pairs_numba(np.zeros((1, 4)) + [0, 0, 1, 0], np.zeros((1, 4)) + [0, 1, 1, 1], [[0, 1]], [[2, 3]])
    rows = []
    for name, fn in (("numba", kernels.classify_pairs_numba), ("numpy", kernels.classify_pairs_numpy)):
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            check = all_pairs(ctx, fn)
            best = min(best, time.perf_counter() - t0)
        rows.append((name, best, check))
    if rows[0][2] != rows[1][2]:
        raise SystemExit(f"{label}: kernels disagree")
    n = len(ctx.arrays)
    pairs = n * (n - 1) // 2
    print(f"{label:>4} {pairs:>6} pairs  numba {rows[0][1]:.3f}s  numpy {rows[1][1]:.3f}s  speedup {rows[1][1] / rows[0][1]:.1f}x")


if __name__ == "__main__":
    for label in sys.argv[1:] or ["F4", "E6", "H4", "E7", "E8"]:
        bench(label)
