"""Decision procedures: complete case, quasi-complete case with witness
construction, a fixed-parameter algorithm for the general case, and a
brute-force oracle.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import deque
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

from .errors import (
    BadParams,
    NotAMatching,
    NotComplete,
    NotMaximum,
    NotQuasiComplete,
    TooLarge,
    Unsupported,
)
from .graph import (
    BipartiteRepresentation,
    Edge,
    InterconnectionTree,
    MultipartiteGraph,
    QuotientGraph,
    _complete_pair_matrix,
    bipartite_representation,
    classify,
    contract,
    is_interconnection_tree,
    quotient,
)

BRUTE_GUARD_ENV = "ICT_MAX_BRUTE"
_DEFAULT_BRUTE_LIMIT = 10 ** 8


# -- generic Hopcroft-Karp ----------------------------------------------------

_INF = float("inf")


def _hopcroft_karp(lefts: list, adj: dict) -> tuple[dict, dict]:
    """Maximum bipartite matching; adj maps left id -> iterable of right ids.

    Returns (match_l, match_r). Deterministic: lefts and each adjacency list
    are scanned in the given order, so callers pass them sorted.
    """
    match_l: dict = {}
    match_r: dict = {}
    dist: dict = {}

    def bfs() -> bool:
        queue = deque()
        for u in lefts:
            if u not in match_l:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        found = False
        while queue:
            u = queue.popleft()
            for r in adj[u]:
                w = match_r.get(r)
                if w is None:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u) -> bool:
        for r in adj[u]:
            w = match_r.get(r)
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = r
                match_r[r] = u
                return True
        dist[u] = _INF
        return False

    while bfs():
        for u in lefts:
            if u not in match_l:
                dfs(u)
    return match_l, match_r


class Matching(NamedTuple):
    """Bipartite matching as (left vertex, right part) pairs."""

    edges: frozenset

    @property
    def size(self) -> int:
        return len(self.edges)


class VertexCover(NamedTuple):
    """Vertex cover of a bipartite representation; the two sides live in
    different id spaces (vertex ids vs part ids), hence two fields."""

    left: frozenset
    right: frozenset

    @property
    def size(self) -> int:
        return len(self.left) + len(self.right)


def max_matching_bipartite(b: BipartiteRepresentation) -> Matching:
    """Maximum matching of the first-part-versus-other-parts bipartite view."""
    lefts = sorted(b.left)
    adj = {u: b.adjacency.get(u, ()) for u in lefts}
    match_l, _ = _hopcroft_karp(lefts, adj)
    return Matching(edges=frozenset(match_l.items()))


def min_vertex_cover_from_matching(b: BipartiteRepresentation, m: Matching) -> VertexCover:
    """Minimum vertex cover derived from a maximum matching by alternating
    reachability from the unmatched left vertices."""
    match_l: dict = {}
    match_r: dict = {}
    for u, r in m.edges:
        if u not in b.adjacency or r not in b.adjacency[u]:
            raise BadParams(f"pair ({u}, {r}) is not an edge")
        if u in match_l or r in match_r:
            raise NotAMatching(f"endpoint reused at pair ({u}, {r})")
        match_l[u] = r
        match_r[r] = u

    visited_l: set = set()
    visited_r: set = set()
    queue = deque(u for u in sorted(b.left) if u not in match_l)
    visited_l.update(queue)
    while queue:
        u = queue.popleft()
        for r in b.adjacency[u]:
            if r == match_l.get(u) or r in visited_r:
                continue
            visited_r.add(r)
            w = match_r.get(r)
            if w is None:
                raise NotMaximum(
                    f"augmenting path reaches unmatched part {r}")
            if w not in visited_l:
                visited_l.add(w)
                queue.append(w)
    left = frozenset(u for u in b.left if u not in visited_l)
    return VertexCover(left=left, right=frozenset(visited_r))


# -- complete case ------------------------------------------------------------


def decide_complete(g: MultipartiteGraph) -> bool:
    """True iff a complete multipartite graph has an interconnection tree:
    exactly when n >= 2(k-1)."""
    if classify(g).tag != "Complete":
        raise NotComplete(f"{g!r} is not complete multipartite")
    return g.n >= 2 * (g.k - 1)


# -- quasi-complete case --------------------------------------------------------


def _quasi_feasible(g: MultipartiteGraph) -> bool:
    """Feasibility test assuming parts 2..k are pairwise fully joined
    (the caller guarantees it); part 1 is the special part."""
    k = g.k
    if k == 1:
        return True
    b = bipartite_representation(g)
    lefts = sorted(b.left)
    match_l, _ = _hopcroft_karp(lefts, {u: b.adjacency[u] for u in lefts})
    mu = len(match_l)
    n1 = len(g.parts[0])
    if g.n - n1 < 2 * (k - 1) - mu:
        return False
    rest_single = all(len(p) == 1 for p in g.parts[1:])
    if rest_single:
        return True
    for i in range(1, k):
        if len(g.parts[i]) >= 2:
            pid = i + 1
            if any(pid in b.adjacency[u] for u in b.left):
                return True
    return False


def _build_quasi_witness(g: MultipartiteGraph) -> InterconnectionTree:
    """Constructive direction: lift a maximum matching of the bipartite view
    (after an exchange step that covers a non-singleton part reachable from
    part 1), contract it, solve the complete remainder greedily, recombine.
    Assumes the feasibility test already passed."""
    k = g.k
    if k == 1:
        return InterconnectionTree(())
    b = bipartite_representation(g)
    lefts = sorted(b.left)
    match_l, _ = _hopcroft_karp(lefts, {u: b.adjacency[u] for u in lefts})

    rest_single = all(len(p) == 1 for p in g.parts[1:])
    if rest_single:
        edges = []
        for u in sorted(match_l):
            pid = match_l[u]
            x = g.parts[pid - 1][0]
            edges.append(g.edge(u, x))
        return InterconnectionTree(tuple(edges))

    # parts of size >= 2 seen from part 1; one of them must end up matched
    big = [i + 1 for i in range(1, k)
           if len(g.parts[i]) >= 2
           and any((i + 1) in b.adjacency[u] for u in b.left)]
    matched_parts = set(match_l.values())
    anchor = None
    for pid in sorted(matched_parts):
        if len(g.parts[pid - 1]) >= 2:
            anchor = pid
            break
    if anchor is None:
        anchor = big[0]
        u = next(x for x in lefts if anchor in b.adjacency[x])
        match_l[u] = anchor

    # lift: pair each matched part with the smallest actual neighbor
    pairs = sorted(match_l.items())
    pairs.sort(key=lambda p: (p[1] == anchor, p))  # anchor pair contracts last
    lifted = []
    for u, pid in pairs:
        x = min(nb for nb, _ in g.neighbors(u) if g.part_of(nb) == pid)
        lifted.append(g.edge(u, x))

    cur = g
    for e in lifted:
        cur = contract(cur, e)

    # unmatched remains of the original first part are isolated; drop them
    old_first = set(g.parts[0])
    kept_first = tuple(v for v in cur.parts[0] if v not in old_first)
    parts = [kept_first] + [list(p) for p in cur.parts[1:]]
    gone = set(cur.parts[0]) - set(kept_first)
    edges = [e for e in cur.edges if e.u not in gone and e.v not in gone]
    cur = MultipartiteGraph(parts, edges)

    # complete remainder: repeatedly join the two largest parts
    rem = []
    while cur.k >= 2:
        sizes = sorted(range(cur.k), key=lambda i: (-len(cur.parts[i]), i))
        a, c = sorted(sizes[:2])
        e = cur.edge(cur.parts[a][0], cur.parts[c][0])
        rem.append(e)
        if cur.k == 2:
            break
        cur = contract(cur, e)

    return InterconnectionTree(tuple(g.edge(e.u, e.v) for e in lifted + rem))


def decide_quasi_complete(g: MultipartiteGraph, witness: bool = False
                          ) -> tuple[bool, Optional[InterconnectionTree]]:
    """Decision for graphs whose parts 2..k are pairwise fully joined
    (part 1 may have arbitrary edges outward).

    Returns (answer, tree) where tree is a witness when requested and the
    answer is positive, else None. The answer is positive iff
    (1) n - |part 1| >= 2(k-1) - (maximum matching of the bipartite view), and
    (2) all other parts are singletons, or some part of size >= 2 is reachable
        from part 1 by an edge.
    """
    k = g.k
    if k >= 3:
        comp = _complete_pair_matrix(g)
        for i in range(1, k):
            for j in range(i + 1, k):
                if not comp[i][j]:
                    raise NotQuasiComplete(
                        f"parts {i + 1} and {j + 1} are not fully joined")
    if not _quasi_feasible(g):
        return False, None
    if not witness:
        return True, None
    return True, _build_quasi_witness(g)


# -- spanning trees of the quotient ---------------------------------------------


@dataclass(frozen=True)
class SpanningTreeOnParts:
    """Spanning tree of the quotient graph: k-1 part pairs plus per-part degrees."""

    edges: tuple[tuple[int, int], ...]
    degree: tuple[int, ...]


class _UnionFind:
    __slots__ = ("root",)

    def __init__(self, n: int):
        self.root = list(range(n))

    def find(self, a: int) -> int:
        r = self.root
        while r[a] != a:
            r[a] = r[r[a]]
            a = r[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.root[rb] = ra
        return True

    def clone(self) -> "_UnionFind":
        uf = _UnionFind(0)
        uf.root = self.root[:]
        return uf


def _quotient_connected(q: QuotientGraph) -> bool:
    uf = _UnionFind(q.k + 1)
    comps = q.k
    for i, j in q.edges:
        if uf.union(i, j):
            comps -= 1
    return comps == 1


def spanning_trees_of_quotient(q: QuotientGraph) -> Iterator[SpanningTreeOnParts]:
    """All spanning trees of the quotient, each exactly once, by backtracking
    over the sorted edge list with a connectivity prune."""
    k = q.k
    if k == 1:
        yield SpanningTreeOnParts(edges=(), degree=(0,))
        return
    edges = sorted(q.edges)
    m = len(edges)

    def still_connectable(chosen: list, idx: int) -> bool:
        uf = _UnionFind(k + 1)
        comps = k
        for i, j in chosen:
            if uf.union(i, j):
                comps -= 1
        for i, j in edges[idx:]:
            if uf.union(i, j):
                comps -= 1
                if comps == 1:
                    return True
        return comps == 1

    def rec(idx: int, chosen: list, uf: _UnionFind) -> Iterator[SpanningTreeOnParts]:
        if len(chosen) == k - 1:
            deg = [0] * k
            for i, j in chosen:
                deg[i - 1] += 1
                deg[j - 1] += 1
            yield SpanningTreeOnParts(edges=tuple(chosen), degree=tuple(deg))
            return
        if idx == m or not still_connectable(chosen, idx):
            return
        i, j = edges[idx]
        if uf.find(i) != uf.find(j):
            child = uf.clone()
            child.union(i, j)
            yield from rec(idx + 1, chosen + [(i, j)], child)
        yield from rec(idx + 1, chosen, uf)

    yield from rec(0, [], _UnionFind(k + 1))


# -- general case (fixed-parameter) ----------------------------------------------


class _PairData(NamedTuple):
    mu: int                       # maximum matching size between the two parts
    cover_lo: tuple[int, ...]     # cover vertices inside the smaller-id part
    cover_hi: tuple[int, ...]     # cover vertices inside the larger-id part


def _pair_matching_cover(g: MultipartiteGraph, i: int, j: int) -> _PairData:
    """Maximum matching and a König cover of the bipartite graph induced by
    parts i and j (1-based, i < j)."""
    vi, vj = g.parts[i - 1], g.parts[j - 1]
    in_j = set(vj)
    adj = {}
    for u in vi:
        adj[u] = tuple(nb for nb, _ in g.neighbors(u) if nb in in_j)
    lefts = [u for u in vi if adj[u]]
    match_l, match_r = _hopcroft_karp(lefts, adj)
    visited_l: set = set()
    visited_r: set = set()
    queue = deque(u for u in lefts if u not in match_l)
    visited_l.update(queue)
    while queue:
        u = queue.popleft()
        for r in adj[u]:
            if r == match_l.get(u) or r in visited_r:
                continue
            visited_r.add(r)
            w = match_r.get(r)
            if w is not None and w not in visited_l:
                visited_l.add(w)
                queue.append(w)
    cover_lo = tuple(sorted(u for u in lefts if u not in visited_l))
    cover_hi = tuple(sorted(visited_r))
    return _PairData(mu=len(match_l), cover_lo=cover_lo, cover_hi=cover_hi)


def _candidates_for_pair(g: MultipartiteGraph, i: int, j: int,
                         data: _PairData, d_i: int, d_j: int) -> list[Edge]:
    """Kernelized candidate edges between parts i and j: every edge with both
    endpoints in the cover, plus for each cover vertex the d smallest
    non-cover neighbors on the opposite side."""
    cov_i, cov_j = set(data.cover_lo), set(data.cover_hi)
    in_i, in_j = set(g.parts[i - 1]), set(g.parts[j - 1])
    out: dict[tuple[int, int], Edge] = {}
    for c in data.cover_lo:          # c in part i
        kept = 0
        for nb, pos in g.neighbors(c):
            if nb not in in_j:
                continue
            e = g.edges[pos]
            if nb in cov_j:
                out[e.key] = e
            elif kept < d_j:
                out[e.key] = e
                kept += 1
    for c in data.cover_hi:          # c in part j
        kept = 0
        for nb, pos in g.neighbors(c):
            if nb not in in_i:
                continue
            e = g.edges[pos]
            if nb in cov_i:
                out[e.key] = e
            elif kept < d_i:
                out[e.key] = e
                kept += 1
    return [out[key] for key in sorted(out)]


def _exists_with_projection(g: MultipartiteGraph, s_edges: tuple,
                            pair: dict) -> bool:
    """Is there an interconnection tree projecting exactly onto the given
    tree over part ids? Splits on a pair whose matching is large enough;
    otherwise kernelizes and exhausts."""
    kk = len(s_edges) + 1
    if kk == 1:
        return True

    for (i, j) in s_edges:
        if pair[(i, j)].mu >= kk - 1:
            # the split: removing (i, j) leaves two subtrees solved
            # independently; a large matching always supplies a joining edge
            nodes_i = {i}
            grew = True
            rest = [e for e in s_edges if e != (i, j)]
            while grew:
                grew = False
                for a, c in rest:
                    if (a in nodes_i) != (c in nodes_i):
                        nodes_i.update((a, c))
                        grew = True
            s1 = tuple(e for e in rest if e[0] in nodes_i)
            s2 = tuple(e for e in rest if e[0] not in nodes_i)
            return (_exists_with_projection(g, s1, pair)
                    and _exists_with_projection(g, s2, pair))

    deg: dict[int, int] = {}
    for (i, j) in s_edges:
        deg[i] = deg.get(i, 0) + 1
        deg[j] = deg.get(j, 0) + 1

    cands = []
    for (i, j) in s_edges:
        c = _candidates_for_pair(g, i, j, pair[(i, j)], deg[i], deg[j])
        if not c:
            return False
        cands.append(c)
    cands.sort(key=len)

    used: set[int] = set()

    def bt(pos: int) -> bool:
        if pos == len(cands):
            return True
        for e in cands[pos]:
            if e.u in used or e.v in used:
                continue
            used.add(e.u)
            used.add(e.v)
            if bt(pos + 1):
                return True
            used.discard(e.u)
            used.discard(e.v)
        return False

    return bt(0)


def decide_fpt(g: MultipartiteGraph, max_k: int = 12) -> bool:
    """Existence of an interconnection tree in an arbitrary multipartite
    graph, parameterized by the number of parts.

    Precomputes per-part-pair matchings and covers once, then processes each
    spanning tree of the quotient: split along a pair with a large matching,
    or kernelize the candidate edges and exhaust.
    """
    k = g.k
    if k == 1:
        return True
    if k > max_k:
        raise Unsupported(
            f"k={k} exceeds the configured bound {max_k}")
    if g.n < 2 * (k - 1):
        return False           # k-1 disjoint edges need 2(k-1) vertices
    q = quotient(g)
    if not _quotient_connected(q):
        return False
    pair = {(i, j): _pair_matching_cover(g, i, j) for (i, j) in sorted(q.edges)}
    for s in spanning_trees_of_quotient(q):
        if _exists_with_projection(g, s.edges, pair):
            return True
    return False


# -- brute force -----------------------------------------------------------------


def _brute_guard(g: MultipartiteGraph) -> None:
    limit = int(os.environ.get(BRUTE_GUARD_ENV, _DEFAULT_BRUTE_LIMIT))
    combos = math.comb(g.m, g.k - 1) if g.m >= g.k - 1 else 0
    if combos > limit:
        raise TooLarge(
            f"C({g.m}, {g.k - 1}) = {combos} exceeds the guard {limit}")


def decide_brute(g: MultipartiteGraph) -> bool:
    """Exhaustive oracle: scan (k-1)-subsets of edges, stop at the first
    interconnection tree."""
    _brute_guard(g)
    if g.m < g.k - 1:
        return g.k == 1
    for combo in itertools.combinations(g.edges, g.k - 1):
        if is_interconnection_tree(g, combo):
            return True
    return False
