#!/usr/bin/env python3
"""Compare the numba solve kernel against the pure-Python fallback.

Both paths run the identical source (the fallback is simply the uncompiled
function), selected by FRACCOL_KERNEL; each backend is timed in its own
subprocess so the flag is honored at import time.

Usage: python3 benchmarks/bench_solver.py [--nmax N] [--repeat R]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys


def run_backend(backend: str, nmax: int, repeat: int):
    env = dict(os.environ, FRACCOL_KERNEL=backend)
    out = subprocess.run(
        [sys.executable, "-m", "fraccol._benchwork", str(nmax), str(repeat)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    ).stdout.split()
    return int(out[1]), float(out[2])


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=50)
    args = ap.parse_args()
    print(f"workload: all girth-5 plane maps on <= {args.nmax} vertices, "
          f"a=2, 6-lists from a 10-color universe, x{args.repeat}")
    results = {}
    for backend in ("numba", "py"):
        n, dt = run_backend(backend, args.nmax, args.repeat)
        results[backend] = dt
        print(f"  {backend:6s}: {n} solves in {dt:.3f}s ({1e6 * dt / n:.2f} us/solve)")
    print(f"  speedup: {results['py'] / results['numba']:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
