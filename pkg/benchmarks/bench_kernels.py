#!/usr/bin/env python3
"""Compare the compiled NetNDP kernel against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py --n 2000,8000,32000 --repetitions 5

Also times the object-model engine on the smallest size. Prints a CSV row
per (engine, n) with mean milliseconds and the speedup over pure Python.
"""

import argparse
import csv
import statistics
import sys
import time

from ndpmatch import kernel
from ndpmatch.bench import random_sequence
from ndpmatch.distance import Alphabet
from ndpmatch.matcher import net_ndp
from ndpmatch.pattern import parse_pattern


def time_engine(s, p, delta, gamma, engine, repetitions):
    net_ndp(s, p, delta, gamma, engine=engine)
    samples = []
    for _ in range(repetitions):
        t0 = time.perf_counter()
        report = net_ndp(s, p, delta, gamma, engine=engine)
        samples.append((time.perf_counter() - t0) * 1000.0)
    return statistics.fmean(samples), report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", default="2000,8000,32000")
    ap.add_argument("--pattern", default="E[0,9]L[0,9]S[0,9]E[0,9]L[0,9]S[0,9]E")
    ap.add_argument("--delta", type=int, default=1)
    ap.add_argument("--gamma", type=int, default=3)
    ap.add_argument("--repetitions", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    if not kernel.COMPILED:
        print("compiled kernel not built; only the fallback will be timed", file=sys.stderr)
    alphabet = Alphabet.upper(20)
    p = parse_pattern(args.pattern, alphabet)
    sizes = [int(x) for x in args.n.split(",")]
    engines = ["python", "kernel"] if kernel.COMPILED else ["python"]

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["engine", "n", "mean_ms", "speedup_vs_python", "occ_count"])
    for k, n in enumerate(sizes):
        s = random_sequence(n, alphabet, args.seed)
        base = None
        results = {}
        for engine in engines + (["tree"] if k == 0 else []):
            ms, report = time_engine(s, p, args.delta, args.gamma, engine, args.repetitions)
            results[engine] = report.occurrences.occurrences
            if engine == "python":
                base = ms
            w.writerow([engine, n, f"{ms:.3f}", f"{base / ms:.1f}", report.occ_count])
        first = next(iter(results.values()))
        if any(v != first for v in results.values()):
            print(f"engines disagree at n={n}", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
