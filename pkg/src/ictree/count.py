"""Counting interconnection trees: closed form for complete multipartite
graphs and a brute-force counter for everything small."""

from __future__ import annotations

import itertools
import math

from .errors import NotComplete
from .graph import MultipartiteGraph, classify, is_interconnection_tree
from .decide import _brute_guard


def count_complete(g: MultipartiteGraph) -> int:
    """Number of interconnection trees of a complete multipartite graph:

        (k-2)! * C(n-k, k-2) * (product of part sizes)

    and 0 when n < 2(k-1). A single part has exactly one (empty) tree.
    """
    if classify(g).tag != "Complete":
        raise NotComplete(f"{g!r} is not complete multipartite")
    return count_from_sizes([len(p) for p in g.parts])


def count_from_sizes(sizes) -> int:
    """The complete-case closed form from part sizes alone. Also an upper
    bound for any subgraph on the same parts."""
    k, n = len(sizes), sum(sizes)
    if k == 1:
        return 1
    if n < 2 * (k - 1):
        return 0
    prod = 1
    for s in sizes:
        prod *= s
    return math.factorial(k - 2) * math.comb(n - k, k - 2) * prod


def count_brute(g: MultipartiteGraph) -> int:
    """Exhaustive count over all (k-1)-subsets of edges."""
    _brute_guard(g)
    if g.m < g.k - 1:
        return 1 if g.k == 1 else 0
    total = 0
    for combo in itertools.combinations(g.edges, g.k - 1):
        if is_interconnection_tree(g, combo):
            total += 1
    return total
