"""Benchmark: compiled interpolation/root kernels vs the pure-Python lane.

Usage: python benchmarks/bench_kernels.py

Times koetter_interpolate and rr_yroots on a ladder of multiplicity sizes
over F_16 (the hot path of the Euclidean decoder) and prints both lanes
side by side. Results are asserted equal before timing is reported.
"""

import time

import numpy as np

from bchlattice import _pykernel
from bchlattice.gf import field_make
from bchlattice.softdecode import delta_min

try:
    from bchlattice import _ckernel
except ImportError:
    _ckernel = None


def instance(spec, mult_hi, mult_lo):
    pts = []
    for i in range(spec.q - 1):
        x = int(spec.exp[i])
        pts.append((x, 0, mult_hi))
        if mult_lo:
            pts.append((x, 1, mult_lo))
    return pts


def run_case(spec, k, mult_hi, mult_lo, repeats=3):
    pts = instance(spec, mult_hi, mult_lo)
    w = k - 1
    cost = sum(m * (m + 1) // 2 for _, _, m in pts)
    d = delta_min(w, cost)
    lanes = {}
    rows_by_lane = {}
    for name, mod in (("python", _pykernel),) + (
            (("compiled", _ckernel),) if _ckernel else ()):
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            rows = mod.koetter_interpolate(spec, pts, w, d, d // w)
            best = min(best, time.perf_counter() - t0)
        lanes[name] = best
        rows_by_lane[name] = rows
    if _ckernel:
        for a, b in zip(rows_by_lane["python"], rows_by_lane["compiled"]):
            assert np.array_equal(a, b), "lane outputs diverged"
    roots = {}
    rows = rows_by_lane["python"]
    for name, mod in (("python", _pykernel),) + (
            (("compiled", _ckernel),) if _ckernel else ()):
        t0 = time.perf_counter()
        out = mod.rr_yroots(spec, rows, k)
        roots[name] = (time.perf_counter() - t0, out)
    if _ckernel:
        assert roots["python"][1] == roots["compiled"][1]
    return cost, d, lanes, {k_: v[0] for k_, v in roots.items()}


def main():
    spec = field_make(2, 4)
    print(f"{'cost':>6} {'delta':>6} {'interp py':>11} {'interp c':>11} "
          f"{'speedup':>8} {'roots py':>10} {'roots c':>10}")
    for mult_hi, mult_lo in ((1, 0), (2, 1), (4, 2), (6, 4), (8, 5), (12, 8)):
        cost, d, lanes, root_t = run_case(spec, 12, mult_hi, mult_lo)
        c_t = lanes.get("compiled")
        ratio = f"{lanes['python'] / c_t:7.1f}x" if c_t else "     n/a"
        print(f"{cost:6d} {d:6d} {lanes['python']:10.4f}s "
              f"{(c_t if c_t else float('nan')):10.4f}s {ratio} "
              f"{root_t['python']:9.4f}s "
              f"{(root_t.get('compiled', float('nan'))):9.4f}s")
    if not _ckernel:
        print("compiled kernel unavailable; python lane only")


if __name__ == "__main__":
    main()
