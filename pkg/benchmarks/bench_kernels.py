#!/usr/bin/env python3
"""Compare the compiled counting kernel against the pure-Python fallback.

Times pair_group_counts (the hot loop of compute_all: per-journal citation
totals plus distinct-citing-document counts) on synthetic workloads shaped
like real citation data: many pairs, few groups, moderately many items.

Usage:
    python benchmarks/bench_kernels.py [--pairs N] [--groups N] [--items N]
                                       [--repeats N]
"""

import argparse
import statistics
import time
from array import array

from uniqjif import kernels
from uniqjif.synth import SplitMix64


def make_workload(seed, n_pairs, n_groups, n_items):
    rng = SplitMix64(seed)
    groups = array("q", (rng.below(n_groups) for _ in range(n_pairs)))
    items = array("q", (rng.below(n_items) for _ in range(n_pairs)))
    return groups, items


def time_backend(name, groups, items, n_groups, n_items, repeats):
    kern = kernels.get_kernel(name)
    samples = []
    result = None
    for _ in range(repeats):
        started = time.perf_counter()
        result = kern.pair_group_counts(groups, items, n_groups, n_items)
        samples.append(time.perf_counter() - started)
    return min(samples), statistics.median(samples), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, default=2_000_000)
    parser.add_argument("--groups", type=int, default=500)
    parser.add_argument("--items", type=int, default=100_000)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    print(f"workload: {args.pairs:,} pairs, {args.groups} groups, {args.items:,} items")
    groups, items = make_workload(args.seed, args.pairs, args.groups, args.items)

    rows = []
    for name in kernels.available_backends():
        best, median, result = time_backend(
            name, groups, items, args.groups, args.items, args.repeats
        )
        rows.append((name, best, median, result))

    reference = rows[0][3]
    for name, best, median, result in rows:
        rate = args.pairs / best / 1e6
        print(f"  {name:<7} best {best * 1e3:8.1f} ms   median {median * 1e3:8.1f} ms   "
              f"{rate:6.1f} M pairs/s")
        if result != reference:
            raise SystemExit(f"backend {name!r} disagrees with {rows[0][0]!r}")

    if len(rows) == 2:
        fast = min(rows, key=lambda r: r[1])[0]
        slow = max(rows, key=lambda r: r[1])[0]
        ratio = max(r[1] for r in rows) / min(r[1] for r in rows)
        print(f"  -> {fast} is {ratio:.1f}x faster than {slow}")


if __name__ == "__main__":
    main()
