"""Benchmark the compiled leapfrog stepper against the numpy fallback.

Both backends must produce bitwise-identical arrays; the table reports
cell-update throughput for a few grid sizes on plane and cylinder grids.

Run:  python benchmarks/bench_leapfrog.py
"""

import time

import numpy as np

from lcqft._core import _stepper_py

try:
    from lcqft._core import _stepper as _stepper_cy
except ImportError:
    _stepper_cy = None


def run_case(stepper, nt, nx, periodic, source, reps):
    rng = np.random.default_rng(1234)
    base = np.zeros((nt, nx))
    base[:2] = rng.standard_normal((2, nx))
    if not periodic:
        base[:, 0] = base[:, -1] = 0.0
    src = rng.standard_normal((nt, nx)) if source else None
    best = float("inf")
    out = None
    for _ in range(reps):
        u = base.copy()
        t0 = time.perf_counter()
        stepper.leapfrog_fill(u, src, 1 / 64, 1.0, periodic, False)
        best = min(best, time.perf_counter() - t0)
        out = u
    return best, out


def main():
    cases = [
        (129, 513, False, True),
        (257, 1025, False, True),
        (257, 1025, True, True),
        (513, 2049, False, False),
    ]
    print(f"{'grid':>12} {'periodic':>9} {'source':>7} "
          f"{'python':>12} {'cython':>12} {'speedup':>8}  identical")
    for nt, nx, periodic, source in cases:
        t_py, u_py = run_case(_stepper_py, nt, nx, periodic, source, reps=3)
        cells = (nt - 2) * nx
        row = (f"{nt}x{nx:>6} {str(periodic):>9} {str(source):>7} "
               f"{cells / t_py / 1e6:>9.1f} Mc/s")
        if _stepper_cy is None:
            print(row + "   (compiled stepper not built)")
            continue
        t_cy, u_cy = run_case(_stepper_cy, nt, nx, periodic, source, reps=3)
        same = np.array_equal(u_py, u_cy)
        row += (f" {cells / t_cy / 1e6:>9.1f} Mc/s {t_py / t_cy:>7.2f}x"
                f"  {same}")
        print(row)
        if not same:
            raise SystemExit("backends disagree bitwise")
    print("\nbackends agree bitwise on every case")


if __name__ == "__main__":
    main()
