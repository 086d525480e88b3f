#!/usr/bin/env python3
"""Timing comparison of the two evaluation backends.

Runs the same workloads once with the compiled core and once with the
pure-Python fallback and prints a small table.  Workloads:

  * batch  -- a mixed set of scalar expressions evaluated over a large
              random point cloud (the hot path of every grid command)
  * grid   -- a full certification sweep of the canonical (2,3,5) model

Usage:
    python3 benchmarks/bench_backends.py [--points N] [--repeat R]
                                         [--threads T]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cartan235 import engine
from cartan235 import expr as ex
from cartan235.certify import certify_grid
from cartan235.fields import monge_distribution
from cartan235.program import compile_expr

BATCH_TEXTS = [
    "x1 * x2 - x3 * x4 + x5^2",
    "sin(x1) * cos(x2) + exp(-x3^2)",
    "(x1 + x2 + x3 + x4 + x5)^3",
    "x4^2 * x1 - 2 * x2 * x5 + 1/2",
    "sqrt(2 + x1^2 + x2^2) * sqrt(4 + x3)",
    "x1 * x2 * x3 * x4 * x5 - x1^4",
]


def time_call(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_batch(n_points: int, threads: int, repeat: int) -> dict[str, float]:
    progs = [compile_expr(ex.parse(t), 5) for t in BATCH_TEXTS]
    rng = np.random.default_rng(7)
    pts = rng.uniform(-1.0, 1.0, size=(n_points, 5))
    out = {}
    for name in engine.available_backends():
        engine.set_backend(name)
        out[name] = time_call(lambda: engine.eval_programs(progs, pts,
                                                           threads=threads),
                              repeat)
    return out


def bench_grid(threads: int, repeat: int) -> dict[str, float]:
    d = monge_distribution()
    out = {}
    for name in engine.available_backends():
        engine.set_backend(name)
        out[name] = time_call(
            lambda: certify_grid(d, [(-1.0, 1.0)] * 5, (8,) * 5,
                                 threads=threads),
            repeat,
        )
    return out


def report(title: str, results: dict[str, float]) -> None:
    print(f"\n{title}")
    for name, seconds in results.items():
        print(f"  {name:10s} {seconds * 1e3:10.2f} ms")
    if "compiled" in results and "python" in results:
        ratio = results["python"] / results["compiled"]
        print(f"  {'speedup':10s} {ratio:10.1f} x")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=200_000,
                        help="point-cloud size for the batch workload")
    parser.add_argument("--repeat", type=int, default=3,
                        help="repetitions; best time is reported")
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    initial = engine.backend()
    print(f"backends available: {', '.join(engine.available_backends())}")
    print(f"batch: {len(BATCH_TEXTS)} expressions x {args.points} points, "
          f"threads={args.threads}")
    try:
        report("batch evaluation", bench_batch(args.points, args.threads,
                                               args.repeat))
        report("model grid certification (8^5 points)",
               bench_grid(args.threads, args.repeat))
    finally:
        engine.set_backend(initial)


if __name__ == "__main__":
    main()
