#!/usr/bin/env python3
"""Compiled kernels vs the pure-Python engines, on the same instances.

Times the full enumeration (build + drain) of the unbounded-branching and
weight-guided streams under engine="kernel" and engine="python", and the
n log n inversion counter against its list-based twin. The compiled column
reflects whatever the backend compiled to: run with ICT_NO_NUMBA=1 to see
the interpreted fallback instead (same code path, no JIT).

    python3 benchmarks/kernel_benchmark.py            # moderate shapes
    python3 benchmarks/kernel_benchmark.py --full     # adds the 4.28M-tree shape
"""

import argparse
import random
import time

import ictree as it
from ictree import _kernels
from ictree.weighted import _merge_count, branch_ordered

SHAPES = [(10, 10, 10), (6, 6, 6, 6), (3, 3, 3, 3, 3)]
# the interpreted machine is itself pure python, so give it less to chew on
SHAPES_INTERP = [(5, 5, 5), (3, 3, 3, 3)]
FULL_SHAPE = (5, 4, 3, 3, 2, 1)


def drain(stream) -> int:
    if hasattr(stream, "codes"):
        return len(stream.codes)
    return sum(1 for _ in stream)


def best_of(repeat, fn):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_enum(label, make_fast, make_py, shapes, repeat, col):
    print(f"\n{label}")
    print(f"{'shape':>18} {'trees':>10} {col:>10} {'python':>10} {'speedup':>8}")
    for shape in shapes:
        g = it.gen_synthetic(shape, seed=1)
        tk, nk = best_of(repeat, lambda: drain(make_fast(g)))
        tp, np_ = best_of(repeat, lambda: drain(make_py(g)))
        if nk != np_:
            raise SystemExit(f"engines disagree on {shape}: {nk} vs {np_}")
        print(f"{str(shape):>18} {nk:>10,} {tk:>9.3f}s {tp:>9.3f}s "
              f"{tp / tk:>7.1f}x")


def bench_inversions(repeat, col):
    rng = random.Random(7)
    ws = [rng.random() for _ in range(2_000_000)]
    tk, ik = best_of(repeat, lambda: _kernels.count_inversions(ws))
    tp, ip = best_of(repeat, lambda: _merge_count(list(ws))[1])
    if ik != ip:
        raise SystemExit(f"inversion counts disagree: {ik} vs {ip}")
    print("\ninversion count, 2,000,000 floats")
    print(f"{col:>10} {'python':>10} {'speedup':>8}")
    print(f"{tk:>9.3f}s {tp:>9.3f}s {tp / tk:>7.1f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3,
                    help="timings keep the best of this many runs")
    ap.add_argument("--full", action="store_true",
                    help=f"also run the {FULL_SHAPE} shape (4.28M trees; "
                         "the python engine needs a while)")
    args = ap.parse_args()

    if _kernels.USING_NUMBA:
        print("compiled backend: numba")
        col = "kernel"
        be_fast = lambda g: it.enum_unbounded_branching(g, engine="kernel")
        wge_fast = lambda g: it.enum_wge(g, "MinEdge", engine="kernel")
        shapes = SHAPES + ([FULL_SHAPE] if args.full else [])
        # absorb one-time JIT compilation outside the timed region
        warm = it.gen_synthetic((2, 2, 2), seed=0)
        drain(be_fast(warm))
        drain(wge_fast(warm))
        _kernels.count_inversions([1.0, 0.0])
    else:
        print("compiled backend: off (ICT_NO_NUMBA) — timing the same array "
              "machine interpreted")
        col = "interp"
        be_fast = lambda g: _kernels.be_stream(g, interpreted=True)
        wge_fast = lambda g: _kernels.wge_stream(
            branch_ordered(g, "MinEdge"), interpreted=True)
        shapes = SHAPES_INTERP + ([FULL_SHAPE] if args.full else [])

    bench_enum("unbounded branching, complete instances",
               be_fast,
               lambda g: it.enum_unbounded_branching(g, engine="python"),
               shapes, args.repeat, col)
    bench_enum("weight-guided (MinEdge), complete instances",
               wge_fast,
               lambda g: it.enum_wge(g, "MinEdge", engine="python"),
               shapes, args.repeat, col)
    bench_inversions(args.repeat, col)


if __name__ == "__main__":
    main()
