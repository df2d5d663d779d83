"""Weight measures, part-selection heuristics, the weight-guided enumerator,
and order-quality metrics for emitted weight sequences."""

from __future__ import annotations

import math
import warnings
from typing import Iterator, Optional, Sequence

from .errors import BadParams, EmptyStream, EmptyTreeWarning, NotQuasiComplete
from .graph import (
    Edge,
    InterconnectionTree,
    MultipartiteGraph,
    classify,
    contract,
    remove_edge,
    with_part_order,
)
from .decide import _quasi_feasible
from .enumeration import ArrayStream, SolutionStream

MEASURES = ("Sum", "Max", "L2")
HEURISTICS = ("MaxV", "MinAvg", "MinEdge")


def tree_weight(t: InterconnectionTree, measure: str = "Sum") -> float:
    """Total weight of a tree under the given measure.

    Sum and L2 of no edges are 0.0; Max of no edges is 0.0 with an
    EmptyTreeWarning, since no edge attains it.
    """
    ws = [e.w for e in t.edges]
    if measure == "Sum":
        return float(sum(ws))
    if measure == "Max":
        if not ws:
            warnings.warn("Max weight of an edgeless tree defaults to 0.0",
                          EmptyTreeWarning, stacklevel=2)
            return 0.0
        return float(max(ws))
    if measure == "L2":
        return math.sqrt(sum(w * w for w in ws))
    raise BadParams(f"unknown measure {measure!r}; expected one of {MEASURES}")


# -- part selection ---------------------------------------------------------------


def select_part(g: MultipartiteGraph, heuristic: str = "MinEdge") -> int:
    """Pick the branching part (1-based id) for the weight-guided enumerator.

    MaxV: most vertices. MinAvg: smallest mean weight over incident edges
    (parts with no incident edge rank last). MinEdge: an endpoint part of
    the globally lightest edge, the lower part id of the two. All ties fall
    to the smaller part id.
    """
    if heuristic == "MaxV":
        return min(range(1, g.k + 1), key=lambda i: (-len(g.parts[i - 1]), i))
    if heuristic == "MinAvg":
        tot = [0.0] * (g.k + 1)
        deg = [0] * (g.k + 1)
        for e in g.edges:
            for p in (g.part_of(e.u), g.part_of(e.v)):
                tot[p] += e.w
                deg[p] += 1
        return min(range(1, g.k + 1),
                   key=lambda i: (tot[i] / deg[i] if deg[i] else math.inf, i))
    if heuristic == "MinEdge":
        if not g.edges:
            raise BadParams("MinEdge needs at least one edge")
        e = min(g.edges, key=lambda e: (e.w, e.key))
        return min(g.part_of(e.u), g.part_of(e.v))
    raise BadParams(f"unknown heuristic {heuristic!r}; expected one of {HEURISTICS}")


# -- weight-guided enumeration ------------------------------------------------------


def _wge_node(cur: MultipartiteGraph, partial: list) -> Iterator[InterconnectionTree]:
    """Branching part is part 1 throughout (contractions merge into it).
    Candidates at each node are taken lightest-first."""
    if cur.k == 2:
        for e in sorted(cur.edges, key=lambda e: (e.w, e.key)):
            yield InterconnectionTree(tuple(partial + [e]))
        return
    cands = sorted(
        (e for e in cur.edges
         if cur.part_of(e.u) == 1 or cur.part_of(e.v) == 1),
        key=lambda e: (e.w, e.key))
    for e in cands:
        pj = cur.part_of(e.v) if cur.part_of(e.u) == 1 else cur.part_of(e.u)
        if len(cur.parts[0]) + len(cur.parts[pj - 1]) > 2:
            child = contract(cur, e)
            if _quasi_feasible(child):
                partial.append(e)
                yield from _wge_node(child, partial)
                partial.pop()
        cur = remove_edge(cur, e)


def branch_ordered(g: MultipartiteGraph, heuristic: str = "MinEdge") -> MultipartiteGraph:
    """The same graph with the branching part moved to position 1.

    On complete inputs the heuristic chooses the branching part. When
    exactly one part is incompletely joined, only that part can carry the
    branching role (the search requires every other pair of parts fully
    joined), so the heuristic is ignored. Anything less complete is
    rejected.
    """
    if heuristic not in HEURISTICS:
        raise BadParams(f"unknown heuristic {heuristic!r}; expected one of {HEURISTICS}")
    cls = classify(g)
    if cls.tag == "General" or (cls.tag == "TQuasiComplete" and cls.t > 1):
        raise NotQuasiComplete(
            "weight-guided enumeration needs a complete graph or one with "
            "a single incompletely-joined part")
    if cls.tag == "Complete" and g.m > 0:
        main = select_part(g, heuristic)
    elif cls.tag == "Complete":
        main = 1
    else:
        main = cls.order[0]
    order = (main,) + tuple(p for p in range(1, g.k + 1) if p != main)
    return with_part_order(g, order)


def enum_wge(g: MultipartiteGraph, heuristic: str = "MinEdge",
             engine: str = "auto") -> SolutionStream:
    """Weight-guided enumeration for complete and 1-quasi-complete graphs.

    The heuristic picks the branching part on complete inputs; when exactly
    one part breaks completeness it must be the branching part and the
    heuristic is ignored. Each node orders its branch edges lightest-first
    and a branch is entered only if its contraction stays feasible, so
    cheap trees tend to surface early; the global order is not sorted.

    engine: "auto" prefers the compiled array engine when applicable,
    "python" forces the recursive generator, "kernel" requires the
    compiled engine.
    """
    g2 = branch_ordered(g, heuristic)

    if engine != "python":
        from . import _kernels
        kern = _kernels.wge_stream(g2)
        if kern is not None:
            return kern
        if engine == "kernel":
            raise ValueError("compiled engine not applicable to this instance")

    def gen():
        if g2.k == 1:
            yield InterconnectionTree(())
            return
        if not _quasi_feasible(g2):
            return
        yield from _wge_node(g2, [])

    return SolutionStream(gen())


# -- order-quality metrics -----------------------------------------------------------


def _merge_count(a: list) -> tuple[list, int]:
    n = len(a)
    if n < 2:
        return a, 0
    left, nl = _merge_count(a[: n // 2])
    right, nr = _merge_count(a[n // 2:])
    inv = nl + nr
    out = []
    i = j = 0
    while i < len(left) and j < len(right):
        if right[j] < left[i]:  # strict: equals are not inverted
            inv += len(left) - i
            out.append(right[j])
            j += 1
        else:
            out.append(left[i])
            i += 1
    out.extend(left[i:])
    out.extend(right[j:])
    return out, inv


def normalized_inversions(ws: Sequence[float]) -> tuple[int, float]:
    """(inversion count, count / C(n,2)) for a weight sequence, in
    O(n log n). Pairs i < j count iff ws[i] > ws[j]; sequences shorter
    than two have zero of both."""
    n = len(ws)
    if n < 2:
        return 0, 0.0
    if n > 4096:
        from . import _kernels
        inv = _kernels.count_inversions(ws)
    else:
        _, inv = _merge_count(list(ws))
    return inv, 2.0 * inv / (n * (n - 1))


def normalized_runs(ws: Sequence[float]) -> tuple[int, float]:
    """(count of maximal nondecreasing runs, (runs-1)/(n-1)). A sorted
    sequence is one run; the empty sequence has zero."""
    n = len(ws)
    if n == 0:
        return 0, 0.0
    runs = 1
    for i in range(1, n):
        if ws[i] < ws[i - 1]:
            runs += 1
    return runs, (runs - 1) / (n - 1) if n > 1 else 0.0


def mean_first_n(stream: SolutionStream, n: int, measure: str = "Sum") -> float:
    """Mean weight of the first n solutions (all of them if fewer).
    Raises EmptyStream when the stream has none at all."""
    if n < 1:
        raise BadParams("n must be positive")
    if isinstance(stream, ArrayStream) and measure == "Sum":
        head = stream.weights[:n]
        if len(head) == 0:
            raise EmptyStream("no solutions to average")
        return float(head.sum() / len(head))
    total = 0.0
    seen = 0
    for t in stream:
        total += tree_weight(t, measure)
        seen += 1
        if seen == n:
            break
    if seen == 0:
        raise EmptyStream("no solutions to average")
    return total / seen


def min_weight_brute(g: MultipartiteGraph, measure: str = "Sum"
                     ) -> tuple[float, InterconnectionTree]:
    """Exhaustive minimum-weight interconnection tree; ties break to the
    lexicographically least edge list. Raises EmptyStream when none exist."""
    from .enumeration import enum_brute
    best: Optional[tuple] = None
    for t in enum_brute(g):
        key = (tree_weight(t, measure), tuple(e.key for e in t.edges))
        if best is None or key < best[0]:
            best = (key, t)
    if best is None:
        raise EmptyStream("graph has no interconnection tree")
    return best[0][0], best[1]
