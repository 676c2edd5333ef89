#!/usr/bin/env python3
"""Compare the compiled and pure-Python kernel backends.

Runs knapsack greedy + exact search on the same seeded instances under each
available backend, checks the results agree exactly, and reports timings.

Usage: python benchmarks/bench_backends.py [--count 10] [--n 7] [--k 3] [--seed 0]
"""

import argparse
import time

from ksub import backend
from ksub.algorithms import exact_bruteforce, knapsack_greedy
from ksub.gen import generate_instance


def run(which, cases):
    backend.set_backend(which)
    results = []
    t0 = time.perf_counter()
    for inst, oracle in cases:
        g = knapsack_greedy(oracle, inst)
        e = exact_bruteforce(oracle, inst)
        results.append((g.solution, g.value, g.evaluations, e.solution, e.value))
    return time.perf_counter() - t0, results


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    cases = []
    for i in range(args.count):
        family = "coverage" if i % 2 == 0 else "separable_sum"
        cases.append(generate_instance(args.seed + i, args.n, args.k, family))

    timings = {}
    results = {}
    for which in backend.available():
        timings[which], results[which] = run(which, cases)
        print(f"{which:>9}: {timings[which]:8.3f}s for {args.count} instances "
              f"(n={args.n}, k={args.k})")

    if len(results) == 2:
        assert results["pure"] == results["compiled"], "backend results diverge!"
        speedup = timings["pure"] / timings["compiled"]
        print(f"results identical; compiled speedup: {speedup:.1f}x")
    else:
        print("only one backend available; no comparison")


if __name__ == "__main__":
    main()
