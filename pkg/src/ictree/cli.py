"""Command-line surface.

Exit codes: 0 success (a "yes" answer included), 1 a "no" answer,
2 any error. Instances travel as ict-1 JSON files; trees print one per
line in the wire format.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import bench as bench_mod
from .count import count_brute, count_complete
from .decide import (
    decide_brute,
    decide_complete,
    decide_fpt,
    decide_quasi_complete,
)
from .enumeration import (
    enum_binary_partition,
    enum_brute,
    enum_unbounded_branching,
)
from .errors import IctError, NotQuasiComplete, Unsupported
from .graph import (
    MultipartiteGraph,
    classify,
    euclidean_instance,
    gen_synthetic,
    reduce_hamiltonian_path,
    with_part_order,
)
from .io import format_tree, parse_graph, serialize_graph
from .weighted import (
    HEURISTICS,
    MEASURES,
    enum_wge,
    normalized_inversions,
    normalized_runs,
    tree_weight,
)


def _load(path: str) -> MultipartiteGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _first_tree(g: MultipartiteGraph):
    """A witness tree (or None), via the cheapest applicable enumerator."""
    cls = classify(g)
    if cls.tag == "Complete":
        return next(iter(enum_unbounded_branching(g, engine="python")), None)
    if cls.tag == "TQuasiComplete" and cls.t == 1:
        ok, tree = decide_quasi_complete(with_part_order(g, cls.order),
                                         witness=True)
        return tree if ok else None
    return next(iter(enum_brute(g)), None)


def cmd_decide(args) -> int:
    g = _load(args.file)
    algo = args.algo
    if algo == "auto":
        cls = classify(g)
        if cls.tag == "Complete":
            ans = decide_complete(g)
        elif cls.tag == "TQuasiComplete" and cls.t == 1:
            ans, _ = decide_quasi_complete(with_part_order(g, cls.order))
        else:
            ans = decide_fpt(g)
    elif algo == "complete":
        ans = decide_complete(g)
    elif algo == "quasi":
        ans, _ = decide_quasi_complete(g)
    elif algo == "fpt":
        ans = decide_fpt(g)
    else:
        ans = decide_brute(g)
    print("yes" if ans else "no")
    if ans and args.witness:
        tree = _first_tree(g)
        if tree is None:  # pragma: no cover - decide says yes, so one exists
            raise Unsupported("no witness found despite a yes answer")
        print(format_tree(g, tree))
    return 0 if ans else 1


def cmd_count(args) -> int:
    g = _load(args.file)
    if args.brute:
        print(count_brute(g))
    elif classify(g).tag == "Complete":
        print(count_complete(g))
    else:
        print(count_brute(g))
    return 0


def cmd_enum(args) -> int:
    g = _load(args.file)
    algo = args.algo
    if algo == "brute":
        stream = enum_brute(g)
    elif algo == "bp":
        cls = classify(g)
        if cls.tag in ("Complete", "TQuasiComplete"):
            g2 = with_part_order(g, cls.order) if cls.tag == "TQuasiComplete" else g
            stream = enum_binary_partition(g2)
        else:
            raise NotQuasiComplete("instance has several incompletely-joined parts")
    elif algo == "ub":
        stream = enum_unbounded_branching(g)
    else:
        stream = enum_wge(g, args.heuristic)
    emitted = 0
    for t in stream:
        line = format_tree(g, t)
        if args.with_weights:
            line += f"\t{tree_weight(t, args.measure):.6f}"
        print(line)
        emitted += 1
        if args.limit is not None and emitted >= args.limit:
            break
    return 0


def cmd_gen(args) -> int:
    extra = None
    if args.kind == "synthetic":
        sizes = _parse_sizes(args.sizes)
        g = gen_synthetic(sizes, seed=args.seed, w_min=args.w_min, w_max=args.w_max)
        extra = {"seed": args.seed}
    elif args.kind == "hampath":
        edges = []
        for tok in args.edges.split(","):
            a, _, b = tok.partition("-")
            edges.append((int(a), int(b)))
        g = reduce_hamiltonian_path(edges, args.n)
    else:  # euclid
        points = []
        for tok in args.points.split(";"):
            label, _, rest = tok.partition(":")
            x, y, z = (float(c) for c in rest.split(","))
            points.append((label, x, y, z))
        g = euclidean_instance(points)
    text = serialize_graph(g, extra=extra)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _parse_sizes(spec: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in spec.split(","))


def cmd_bench(args) -> int:
    if args.source.startswith("synthetic:"):
        sizes = _parse_sizes(args.source.partition(":")[2])
        instances = bench_mod.synthetic_suite(sizes, args.repeat, seed=args.seed)
    else:
        instances = [(args.source, _load(args.source))]
    rows = bench_mod.run_benchmark(instances, first=args.first)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            bench_mod.write_csv(rows, fh)
    else:
        bench_mod.write_csv(rows, sys.stdout)
    agg = bench_mod.aggregate(rows)
    if agg:
        print(bench_mod.format_aggregates(agg), file=sys.stderr)
    return 0


def cmd_metrics(args) -> int:
    ws = [float(line) for line in sys.stdin.read().split()]
    inv, ni = normalized_inversions(ws)
    runs, nr = normalized_runs(ws)
    print(f"n {len(ws)}")
    print(f"inversions {inv}")
    print(f"ni {ni:.6f}")
    print(f"runs {runs}")
    print(f"nr {nr:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ictree",
        description="Decide, count, enumerate and benchmark interconnection "
                    "trees of multipartite graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="does an interconnection tree exist?")
    p.add_argument("file")
    p.add_argument("--algo", choices=("auto", "complete", "quasi", "fpt", "brute"),
                   default="auto")
    p.add_argument("--witness", action="store_true",
                   help="print one tree when the answer is yes")
    p.set_defaults(fn=cmd_decide)

    p = sub.add_parser("count", help="number of interconnection trees")
    p.add_argument("file")
    p.add_argument("--brute", action="store_true",
                   help="force the exhaustive count")
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("enum", help="list interconnection trees")
    p.add_argument("file")
    p.add_argument("--algo", choices=("brute", "bp", "ub", "wge"), default="brute")
    p.add_argument("--heuristic", choices=HEURISTICS, default="MinEdge")
    p.add_argument("--measure", choices=MEASURES, default="Sum")
    p.add_argument("--with-weights", action="store_true",
                   help="append the measure value to each line")
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(fn=cmd_enum)

    p = sub.add_parser("gen", help="generate an instance")
    gsub = p.add_subparsers(dest="kind", required=True)
    ps = gsub.add_parser("synthetic", help="complete graph, uniform weights")
    ps.add_argument("--sizes", default="5,4,3,3,2,1")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--w-min", type=float, default=0.1)
    ps.add_argument("--w-max", type=float, default=10.0)
    ps.add_argument("-o", "--output")
    ps.set_defaults(fn=cmd_gen)
    ph = gsub.add_parser("hampath",
                         help="instance whose trees are the directed "
                              "Hamiltonian paths of the given graph")
    ph.add_argument("--edges", required=True,
                    help="comma-separated a-b vertex pairs, e.g. 0-1,1-2,0-2")
    ph.add_argument("--n", type=int, required=True, help="vertex count")
    ph.add_argument("-o", "--output")
    ph.set_defaults(fn=cmd_gen)
    pe = gsub.add_parser("euclid", help="complete graph over labeled 3D points")
    pe.add_argument("--points", required=True,
                    help="semicolon-separated label:x,y,z points")
    pe.add_argument("-o", "--output")
    pe.set_defaults(fn=cmd_gen)

    p = sub.add_parser("bench", help="order-quality benchmark, CSV output")
    p.add_argument("source",
                   help='instance file, or "synthetic:5,4,3,3,2,1" to generate')
    p.add_argument("--repeat", type=int, default=50,
                   help="variant count for generated suites")
    p.add_argument("--first", type=int, default=None,
                   help="stop each enumeration after N solutions")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", help="CSV file (default stdout)")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("metrics",
                       help="order metrics of a weight sequence on stdin")
    p.set_defaults(fn=cmd_metrics)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except IctError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
