"""Unweighted enumerators.

Three engines with one output contract (every interconnection tree exactly
once): a brute-force scan used as the oracle, a binary-partition search with
feasibility pruning for quasi-complete graphs, and the branching enumerator
for complete graphs built on a mutable workspace with O(1) undo.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterator, Optional

from .errors import NotComplete, NotQuasiComplete
from .graph import (
    Edge,
    InterconnectionTree,
    MultipartiteGraph,
    _complete_pair_matrix,
    classify,
    contract,
    is_interconnection_tree,
    remove_edge,
)
from .decide import _brute_guard, _quasi_feasible


class SolutionStream:
    """Pull-based stream of InterconnectionTree values.

    Tracks how many solutions were handed out and whether the underlying
    producer ran dry. Single-consumer. Streams over an instrumented engine
    expose a stats dict (ops, max_gap) once exhausted.
    """

    def __init__(self, gen: Iterator[InterconnectionTree], stats: Optional[dict] = None):
        self._gen = gen
        self.emitted = 0
        self.exhausted = False
        self.stats = stats if stats is not None else {}

    def __iter__(self) -> "SolutionStream":
        return self

    def __next__(self) -> InterconnectionTree:
        try:
            t = next(self._gen)
        except StopIteration:
            self.exhausted = True
            raise
        self.emitted += 1
        return t


class ArrayStream(SolutionStream):
    """Stream backed by precomputed arrays from a compiled enumeration run.

    codes holds one packed integer per solution (injective within the run),
    weights the per-solution total weight; trees are decoded on demand.
    """

    def __init__(self, g: MultipartiteGraph, codes, weights,
                 decode: Callable[[int], InterconnectionTree],
                 truncated: bool = False, stats: Optional[dict] = None):
        self.graph = g
        self.codes = codes
        self.weights = weights
        self.truncated = truncated
        self.stats = stats or {}
        self._decode = decode
        self._pos = 0
        self.emitted = 0
        self.exhausted = False

    def __len__(self) -> int:
        return len(self.codes)

    def __next__(self) -> InterconnectionTree:
        if self._pos >= len(self.codes):
            self.exhausted = True
            raise StopIteration
        t = self._decode(int(self.codes[self._pos]))
        self._pos += 1
        self.emitted += 1
        return t


# -- brute force ---------------------------------------------------------------


def enum_brute(g: MultipartiteGraph) -> SolutionStream:
    """Every interconnection tree, in lexicographic order of the canonical
    edge lists."""
    _brute_guard(g)

    def gen():
        if g.m < g.k - 1:
            if g.k == 1:
                yield InterconnectionTree(())
            return
        for combo in itertools.combinations(g.edges, g.k - 1):
            if is_interconnection_tree(g, combo):
                yield InterconnectionTree(combo)

    return SolutionStream(gen())


def first_solution(g: MultipartiteGraph, algo: str = "brute",
                   heuristic: str = "MinEdge") -> Optional[InterconnectionTree]:
    """First element of the chosen enumerator's stream, or None."""
    if algo == "brute":
        stream = enum_brute(g)
    elif algo == "bp":
        stream = enum_binary_partition(g)
    elif algo == "ub":
        stream = enum_unbounded_branching(g)
    elif algo == "wge":
        from .weighted import enum_wge
        stream = enum_wge(g, heuristic)
    else:
        raise ValueError(f"unknown enumerator {algo!r}")
    return next(iter(stream), None)


# -- binary partition with feasibility pruning -----------------------------------


def _check_rest_complete(g: MultipartiteGraph) -> None:
    if g.k < 3:
        return
    comp = _complete_pair_matrix(g)
    for i in range(1, g.k):
        for j in range(i + 1, g.k):
            if not comp[i][j]:
                raise NotQuasiComplete(
                    f"parts {i + 1} and {j + 1} are not fully joined")


def enum_binary_partition(g: MultipartiteGraph) -> SolutionStream:
    """Flashlight search for graphs whose parts 2..k are pairwise complete.

    At every node the smallest edge touching part 1 splits the space:
    solutions through it (contract and recurse) and solutions without it
    (delete and continue). Each branch is entered only after the
    quasi-complete feasibility test confirms it is non-empty.
    """
    _check_rest_complete(g)

    def gen():
        if g.k == 1:
            yield InterconnectionTree(())
            return
        if not _quasi_feasible(g):
            return
        yield from _bp_node(g, [])

    return SolutionStream(gen())


def _bp_node(g: MultipartiteGraph, partial: list) -> Iterator[InterconnectionTree]:
    """Invariant: the caller established feasibility and parts 2..k are
    pairwise complete."""
    if g.k == 2:
        for e in g.edges:  # every edge crosses the two remaining parts
            yield InterconnectionTree(tuple(partial + [e]))
        return
    cur = g
    while True:
        e = None
        for cand in cur.edges:
            if cur.part_of(cand.u) == 1 or cur.part_of(cand.v) == 1:
                e = cand
                break
        if e is None:
            return
        pj = cur.part_of(e.v) if cur.part_of(e.u) == 1 else cur.part_of(e.u)
        # a contraction that would empty the merged part admits no solutions
        if len(cur.parts[0]) + len(cur.parts[pj - 1]) > 2:
            child = contract(cur, e)
            if _quasi_feasible(child):
                partial.append(e)
                yield from _bp_node(child, partial)
                partial.pop()
        cur = remove_edge(cur, e)
        if not _quasi_feasible(cur):
            return


# -- branching enumerator over a mutable workspace --------------------------------


class EnumWorkspace:
    """Mutable view of a complete multipartite graph under the branching
    enumeration, with constant-time splice/undo.

    Vertices are dense indices 0..n-1 in increasing original-id order (parts
    may interleave). Each original part keeps its alive vertices in a
    doubly-linked ring with a sentinel; current parts are unions of original
    parts held as spliceable segment lists keyed by the smallest constituent
    original part index. Every mutation appends one journal record; popping
    the journal restores state exactly. The ops counter counts mutations,
    undos, and feasibility tests; max_gap is the largest ops distance
    between consecutive emissions.
    """

    def __init__(self, vpart: list[int], n_parts: int):
        n = len(vpart)
        self.n_total = n
        self.P = n_parts
        self.vpart = list(vpart)
        # vertex ring: slots 0..n-1 vertices, n..n+P-1 per-part sentinels
        self.nxt = [0] * (n + n_parts)
        self.prv = [0] * (n + n_parts)
        last = [n + p for p in range(n_parts)]
        for p in range(n_parts):
            sent = n + p
            self.nxt[sent] = sent
            self.prv[sent] = sent
        for v in range(n):
            sent = n + vpart[v]
            tail = last[vpart[v]]
            self.nxt[tail] = v
            self.prv[v] = tail
            self.nxt[v] = sent
            self.prv[sent] = v
            last[vpart[v]] = v
        # segment lists over original part indices; sentinel value -1
        self.seg_next = [-1] * n_parts
        self.seg_prev = [-1] * n_parts
        self.seg_head = list(range(n_parts))
        self.seg_tail = list(range(n_parts))
        # alive current-part handles, doubly linked with sentinel P
        self.hnxt = list(range(1, n_parts + 1)) + [0]
        self.hprv = list(range(-1, n_parts)) + [n_parts - 1]
        self.hprv[0] = n_parts
        sizes = [0] * n_parts
        for p in vpart:
            sizes[p] += 1
        self.size_cur = sizes
        self.n_cur = n
        self.k_cur = n_parts
        self.journal: list[tuple] = []
        self.ops = 0
        self.last_emit = 0
        self.max_gap = 0

    # -- counted primitives ---------------------------------------------

    def test(self) -> bool:
        """Child feasibility: after consuming two vertices and merging two
        parts, a complete instance is non-empty iff n' >= 2(k'-1)."""
        self.ops += 1
        return self.n_cur - 2 >= 2 * (self.k_cur - 2)

    def unlink(self, v: int, h: int) -> None:
        self.ops += 1
        self.nxt[self.prv[v]] = self.nxt[v]
        self.prv[self.nxt[v]] = self.prv[v]
        self.size_cur[h] -= 1
        self.n_cur -= 1
        self.journal.append((0, v, h, 0, 0))

    def merge(self, hm: int, hq: int) -> int:
        """Splice part hq's segments onto part hm's; the union keeps the
        smaller handle. Returns the union's handle."""
        self.ops += 1
        win, lose = (hm, hq) if hm < hq else (hq, hm)
        old_tail = self.seg_tail[win]
        lose_size = self.size_cur[lose]
        self.seg_next[old_tail] = self.seg_head[lose]
        self.seg_prev[self.seg_head[lose]] = old_tail
        self.seg_tail[win] = self.seg_tail[lose]
        self.hnxt[self.hprv[lose]] = self.hnxt[lose]
        self.hprv[self.hnxt[lose]] = self.hprv[lose]
        self.size_cur[win] = self.size_cur[hm] + self.size_cur[hq]
        self.k_cur -= 1
        self.journal.append((1, win, lose, old_tail, lose_size))
        return win

    def mark(self) -> int:
        return len(self.journal)

    def undo_to(self, mark: int) -> None:
        while len(self.journal) > mark:
            self.ops += 1
            kind, a, b, c, d = self.journal.pop()
            if kind == 0:  # relink vertex a into part handle b
                self.nxt[self.prv[a]] = a
                self.prv[self.nxt[a]] = a
                self.size_cur[b] += 1
                self.n_cur += 1
            else:  # split part a back into a and b at segment tail c
                self.seg_next[c] = -1
                self.seg_prev[self.seg_head[b]] = -1
                self.seg_tail[a] = c
                self.hnxt[self.hprv[b]] = b
                self.hprv[self.hnxt[b]] = b
                self.size_cur[b] = d
                self.size_cur[a] -= d
                self.k_cur += 1

    # -- uncounted scans --------------------------------------------------

    def part_min(self, h: int) -> int:
        """Smallest alive vertex of current part h (-1 when empty)."""
        best = -1
        p = self.seg_head[h]
        while p != -1:
            head = self.nxt[self.n_total + p]
            if head < self.n_total and (best == -1 or head < best):
                best = head
            p = self.seg_next[p]
        return best

    def part_vertices(self, h: int) -> list[int]:
        """Alive vertices of current part h in increasing order."""
        out = []
        p = self.seg_head[h]
        segs = []
        while p != -1:
            sent = self.n_total + p
            if self.nxt[sent] != sent:
                segs.append(self.nxt[sent])
            p = self.seg_next[p]
        while segs:
            i = min(range(len(segs)), key=segs.__getitem__)
            v = segs[i]
            out.append(v)
            nv = self.nxt[v]
            if nv < self.n_total:
                segs[i] = nv
            else:
                segs.pop(i)
        return out

    def alive_handles(self) -> list[int]:
        out = []
        h = self.hnxt[self.P]
        while h != self.P:
            out.append(h)
            h = self.hnxt[h]
        return out

    def select_main(self) -> int:
        """Largest current part; ties to the smallest handle."""
        best, best_size = -1, -1
        for h in self.alive_handles():
            if self.size_cur[h] > best_size:
                best, best_size = h, self.size_cur[h]
        return best

    def note_emit(self) -> None:
        gap = self.ops - self.last_emit
        if gap > self.max_gap:
            self.max_gap = gap
        self.last_emit = self.ops

    def close(self) -> None:
        gap = self.ops - self.last_emit
        if gap > self.max_gap:
            self.max_gap = gap

    def snapshot(self) -> tuple:
        """Full structural state, for the restore-on-exhaustion check."""
        return (tuple(self.nxt), tuple(self.prv), tuple(self.seg_next),
                tuple(self.seg_prev), tuple(self.seg_head), tuple(self.seg_tail),
                tuple(self.hnxt), tuple(self.hprv), tuple(self.size_cur),
                self.n_cur, self.k_cur)


def _be_node(ws: EnumWorkspace, partial: list) -> Iterator[tuple]:
    if ws.k_cur == 2:
        handles = ws.alive_handles()
        hm = ws.select_main()
        ho = handles[0] if handles[1] == hm else handles[1]
        vs = ws.part_vertices(ho)
        for u in ws.part_vertices(hm):
            for v in vs:
                ws.ops += 1  # branch test; always passes with two parts
                ws.note_emit()
                yield tuple(partial + [(u, v)])
        return

    hm = ws.select_main()
    while ws.size_cur[hm] > 0:
        u = ws.part_min(hm)
        dead = False
        for hq in ws.alive_handles():
            if hq == hm:
                continue
            skip_part = (ws.size_cur[hm] == 1 and ws.size_cur[hq] == 1)
            for v in ws.part_vertices(hq):
                if not ws.test():
                    dead = True
                    break
                if skip_part:
                    break  # merging two singletons leaves an empty part
                m = ws.mark()
                ws.unlink(u, hm)
                ws.unlink(v, hq)
                ws.merge(hm, hq)
                partial.append((u, v))
                yield from _be_node(ws, partial)
                partial.pop()
                ws.undo_to(m)
            if dead:
                break
        if dead:
            return
        ws.unlink(u, hm)  # advance: later branches never reuse u


def enum_unbounded_branching(g: MultipartiteGraph, engine: str = "auto") -> SolutionStream:
    """Branching enumerator for complete multipartite graphs.

    At each node the largest current part is the branching part; its
    vertices u are taken in increasing order, partners v across the other
    parts likewise, and each (u, v) branch recurses on the contraction with
    all earlier u removed. Feasibility of every branch is a constant-time
    size check, giving constant amortized work per solution.

    engine: "auto" prefers the compiled array engine when applicable,
    "python" forces the workspace generator, "kernel" requires the compiled
    engine.
    """
    if classify(g).tag != "Complete":
        raise NotComplete(f"{g!r} is not complete multipartite")
    if engine != "python":
        from . import _kernels
        kern = _kernels.be_stream(g)
        if kern is not None:
            return kern
        if engine == "kernel":
            raise ValueError("compiled engine not applicable to this instance")

    verts = g.vertices()
    back = dict(enumerate(verts))
    vpart = [g.part_of(v) - 1 for v in verts]
    ws = EnumWorkspace(vpart, g.k)
    stats: dict = {}

    def gen():
        if g.k == 1:
            yield InterconnectionTree(())
            return
        try:
            for pairs in _be_node(ws, []):
                yield InterconnectionTree(
                    tuple(g.edge(back[a], back[b]) for a, b in pairs))
        finally:
            ws.close()
            stats["ops"] = ws.ops
            stats["max_gap"] = ws.max_gap

    stream = SolutionStream(gen(), stats=stats)
    stream.workspace = ws
    return stream
