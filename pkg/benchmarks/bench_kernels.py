"""Timing comparison of the pure and compiled cube kernels.

Run directly::

    python benchmarks/bench_kernels.py [--quick]

Each row times one kernel entry point on one workload with both
backends and prints the speedup.  Workloads stay identical between
backends, and results are asserted equal before a row is reported, so
a benchmark run doubles as a light equivalence check.
"""

from __future__ import annotations

import argparse
import sys
import time

import tildeiso._kernels_py as pure

try:
    import tildeiso._kernels as compiled
except ImportError:
    compiled = None


def _time(fn, *args, repeat: int = 1):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def run(quick: bool) -> int:
    if compiled is None:
        print("compiled backend unavailable; nothing to compare", file=sys.stderr)
        return 1

    rows = []

    def row(label, fn_name, *args, repeat=1):
        t_pure, r_pure = _time(getattr(pure, fn_name), *args, repeat=repeat)
        t_comp, r_comp = _time(getattr(compiled, fn_name), *args, repeat=repeat)
        if r_pure != r_comp:
            print(f"MISMATCH in {label}: backends disagree", file=sys.stderr)
            return 2
        rows.append((label, t_pure, t_comp))
        return 0

    f = "111000"
    bfs_top = 10 if quick else 12
    scan_top = 16 if quick else 20

    rc = row(f"build_free_map m=18 f={f}", "build_free_map", 18, f)
    for m in range(9, bfs_top + 1):
        free = pure.build_free_map(m, f)
        rc |= row(f"first_excess m={m} f={f}", "first_excess", m, free, True)
    for m in (14, scan_top):
        free = pure.build_free_map(m, f)
        rc |= row(f"blocked_pairs m={m} f={f}", "blocked_pairs", m, f, free, True)
    g = "1010"
    free = pure.build_free_map(12, g)
    rc |= row(f"all_violations m=12 f={g}", "all_violations", 12, free, True)
    if rc:
        return rc

    width = max(len(label) for label, _, _ in rows)
    print(f"{'workload':<{width}}  {'pure':>9}  {'compiled':>9}  {'speedup':>8}")
    for label, t_pure, t_comp in rows:
        ratio = t_pure / t_comp if t_comp > 0 else float("inf")
        print(f"{label:<{width}}  {t_pure:>8.3f}s  {t_comp:>8.3f}s  {ratio:>7.1f}x")
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    sys.exit(run(ap.parse_args().quick))
