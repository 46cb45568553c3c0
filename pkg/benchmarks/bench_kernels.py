"""Time the numba and numpy kernel backends side by side.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each kernel is run once untimed per backend (numba compiles on first call),
then timed ``--repeat`` times; the best time is reported.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from subspace_approx import _backend, kernels
from subspace_approx.angles import as_frame
from subspace_approx.enumeration import frame_table


def _cases():
    rng = np.random.default_rng(0)
    frame = as_frame(rng.standard_normal((2, 4)))
    frames = frame_table(100)
    points = rng.uniform(-2.0, 2.0, size=(1_000_000, 4))
    mat = rng.standard_normal((2, 2))
    return {
        "enumerate h<=400": lambda: kernels.enumerate_pluecker(400, workers=1),
        f"psi 1-to-{len(frames)}": lambda: kernels.psi_one_to_many(frame.vectors, frame.complement, frames),
        "tube count 1e6": lambda: kernels.count_in_tube(points, (0.0, 0.0, 0.0, 0.0), 0.1),
        "grid max 2000": lambda: kernels.grid_max_dot(mat, 2000),
    }


def _best(fn, repeat: int) -> float:
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = _backend.available_backends()
    cases = _cases()
    results = {}
    for name in backends:
        _backend.set_backend(name)
        results[name] = {k: _best(fn, args.repeat) for k, fn in cases.items()}

    header = f"{'kernel':<22}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for k in cases:
        line = f"{k:<22}" + "".join(f"{results[b][k] * 1e3:>10.1f}ms" for b in backends)
        if len(backends) == 2:
            line += f"{results['numpy'][k] / results['numba'][k]:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
