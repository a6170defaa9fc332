"""Benchmark the compiled hit-search kernel against the pure-Python one.

Runs the same randomized match workloads through both kernels, checks the
results agree, and reports median wall time per workload size.

Usage: python benchmarks/bench_match.py [--sizes 64,128,256] [--repeats 5]
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
import time

from compalign._hitkern import search_hits as py_search

try:
    from compalign._hitkern_c import search_hits as c_search
except ImportError:
    c_search = None


def make_workload(n: int, rng: random.Random):
    alphabet = 12
    weights = [1.0 + rng.random() * 4.0 for _ in range(alphabet)]
    query = [rng.randrange(alphabet) for _ in range(n // 4)]
    db = [rng.randrange(alphabet) for _ in range(n)]
    return query, db, weights


def time_kernel(kernel, workloads, budget: int) -> float:
    t0 = time.perf_counter()
    for query, db, weights in workloads:
        kernel(query, db, weights, budget, 0.1, None)
    return time.perf_counter() - t0


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="64,128,256")
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--budget", type=int, default=20_000)
    args = ap.parse_args()

    if c_search is None:
        print("compiled kernel not built; run: python setup.py build_ext --inplace")
        return 1

    rng = random.Random(2024)
    print(f"{'n':>6} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for n in (int(s) for s in args.sizes.split(",")):
        workloads = [make_workload(n, rng) for _ in range(3)]
        for query, db, weights in workloads:
            a = sorted(py_search(query, db, weights, args.budget, 0.1, None))
            b = sorted(c_search(query, db, weights, args.budget, 0.1, None))
            if a != b:
                print(f"MISMATCH at n={n}")
                return 1
        t_py = statistics.median(
            time_kernel(py_search, workloads, args.budget)
            for _ in range(args.repeats)
        )
        t_c = statistics.median(
            time_kernel(c_search, workloads, args.budget)
            for _ in range(args.repeats)
        )
        print(f"{n:>6} {t_py:>10.4f} {t_c:>13.4f} {t_py / t_c:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
