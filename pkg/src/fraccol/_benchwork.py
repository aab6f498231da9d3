"""Benchmark worker: times a fixed solve workload with the active backend.

Run as ``python -m fraccol._benchwork [nmax] [repeat]``; prints
``<backend> <instances> <seconds>``.  The CLI ``bench`` subcommand and
``benchmarks/bench_solver.py`` spawn this twice with ``FRACCOL_KERNEL`` set
to ``numba`` and ``py`` to compare the two paths.
"""

from __future__ import annotations

import sys
import time

import numpy as np

from . import _kernel
from .coloring import uniform_lists
from .harness.generate import enumerate_plane_girth5
from .solver import _Lowered


def run(nmax: int, repeat: int) -> None:
    maps = [pm for pm in enumerate_plane_girth5(nmax) if pm.vertex_count >= 2]
    lowered = []
    for pm in maps:
        low = _Lowered(pm, uniform_lists(pm.vertices, 2, range(10)))
        lowered.append((low, np.zeros(low.n, np.int64)))
    # warm the jit cache outside the timed region
    low0, fx0 = lowered[0]
    _kernel.solve_masks(low0.n, low0.a, low0.adj, low0.masks, fx0)
    count = 0
    t0 = time.perf_counter()
    for _ in range(repeat):
        for low, fx in lowered:
            st, _out = _kernel.solve_masks(low.n, low.a, low.adj, low.masks, fx)
            assert st == _kernel.SAT
            count += 1
    dt = time.perf_counter() - t0
    print(f"{_kernel.active_backend()} {count} {dt:.6f}")


if __name__ == "__main__":
    nmax = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    repeat = int(sys.argv[2]) if len(sys.argv) > 2 else 20
    run(nmax, repeat)
