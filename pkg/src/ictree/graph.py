"""Multipartite graph data model, structural operations and instance generators.

Vertices are integers. Parts are 1-based on the public surface (``part_of``
returns ids in ``[1, k]``). Vertex ids are assigned densely at construction
time and stay stable afterwards: operations that remove vertices (contraction,
restriction) keep the surviving ids unchanged, so ids are not necessarily
dense in derived graphs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import (
    BadParams,
    CyclicProjection,
    DuplicateVertex,
    EdgeAbsent,
    EmptyPart,
    NotAMatching,
    SingletonContraction,
)


class Edge(NamedTuple):
    """Undirected weighted edge, stored canonically with ``u < v``."""

    u: int
    v: int
    w: float

    @staticmethod
    def make(u: int, v: int, w: float = 1.0) -> "Edge":
        if u == v:
            raise BadParams(f"self-loop on vertex {u}")
        if u > v:
            u, v = v, u
        return Edge(u, v, float(w))

    @property
    def key(self) -> tuple[int, int]:
        return (self.u, self.v)


@dataclass(frozen=True)
class Classification:
    """Completeness class of a multipartite graph.

    ``tag`` is one of ``"Complete"``, ``"TQuasiComplete"``, ``"General"``.
    ``t`` is the minimal number of possibly-incomplete parts over all part
    orderings (0 for complete graphs). ``order`` is a permutation of the
    1-based part ids placing those t parts first.
    """

    tag: str
    t: int
    order: tuple[int, ...]


@dataclass(frozen=True)
class QuotientGraph:
    """Graph on the 1-based part indices; an edge (i, j) with i < j is present
    whenever some original edge joins part i and part j."""

    k: int
    edges: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class InterconnectionTree:
    """A matching whose projection is a spanning tree of the quotient graph."""

    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.key)))

    def keys(self) -> tuple[tuple[int, int], ...]:
        return tuple(e.key for e in self.edges)


class MultipartiteGraph:
    """Immutable multipartite graph.

    parts    -- tuple of sorted vertex tuples, one per part
    edges    -- canonical edge tuple, sorted by (u, v)
    names    -- optional display name per original vertex id
    coords   -- optional {vertex: (x, y, z)} used by Euclidean instances
    """

    __slots__ = ("parts", "edges", "n", "m", "k", "names", "coords",
                 "_part_idx", "_edge_pos", "_adj")

    def __init__(self, parts: Sequence[Sequence[int]], edges: Iterable, *,
                 names: Optional[Sequence[str]] = None,
                 coords: Optional[dict] = None):
        norm_parts = tuple(tuple(sorted(p)) for p in parts)
        if not norm_parts:
            raise EmptyPart("a multipartite graph needs at least one part")
        part_idx: dict[int, int] = {}
        for i, p in enumerate(norm_parts):
            if not p:
                raise EmptyPart(f"part {i + 1} is empty")
            for v in p:
                if v in part_idx:
                    raise DuplicateVertex(f"vertex {v} appears in two parts")
                part_idx[v] = i

        norm_edges = []
        seen = set()
        for e in edges:
            e = e if isinstance(e, Edge) else Edge.make(*e)
            if e.u not in part_idx or e.v not in part_idx:
                raise BadParams(f"edge {e.key} references an unknown vertex")
            if part_idx[e.u] == part_idx[e.v]:
                raise BadParams(f"edge {e.key} joins two vertices of the same part")
            if e.key in seen:
                raise BadParams(f"parallel edge {e.key}")
            if e.w < 0:
                raise BadParams(f"negative weight on edge {e.key}")
            seen.add(e.key)
            norm_edges.append(e)
        norm_edges.sort(key=lambda e: e.key)

        self.parts = norm_parts
        self.edges = tuple(norm_edges)
        self.n = len(part_idx)
        self.m = len(norm_edges)
        self.k = len(norm_parts)
        self.names = tuple(names) if names is not None else None
        self.coords = dict(coords) if coords else None
        self._part_idx = part_idx
        self._edge_pos = {e.key: i for i, e in enumerate(norm_edges)}
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in part_idx}
        for i, e in enumerate(norm_edges):
            adj[e.u].append((e.v, i))
            adj[e.v].append((e.u, i))
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}

    # -- queries ------------------------------------------------------------

    def part_of(self, v: int) -> int:
        """1-based part id of vertex v."""
        return self._part_idx[v] + 1

    def part(self, pid: int) -> tuple[int, ...]:
        """Vertices of the 1-based part pid."""
        return self.parts[pid - 1]

    def vertices(self) -> list[int]:
        return sorted(self._part_idx)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_pos

    def edge(self, u: int, v: int) -> Edge:
        try:
            return self.edges[self._edge_pos[(min(u, v), max(u, v))]]
        except KeyError:
            raise EdgeAbsent(f"no edge ({u}, {v})") from None

    def edge_index(self, e: Edge) -> int:
        try:
            return self._edge_pos[e.key]
        except KeyError:
            raise EdgeAbsent(f"no edge {e.key}") from None

    def neighbors(self, v: int) -> tuple[tuple[int, int], ...]:
        """(neighbor, edge index) pairs of v, sorted by neighbor id."""
        return self._adj[v]

    def name_of(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    def __eq__(self, other):
        return (isinstance(other, MultipartiteGraph)
                and self.parts == other.parts and self.edges == other.edges)

    def __hash__(self):
        return hash((self.parts, self.edges))

    def __repr__(self):
        sizes = ",".join(str(len(p)) for p in self.parts)
        return f"MultipartiteGraph(k={self.k}, sizes=({sizes}), m={self.m})"


# -- structural operations ---------------------------------------------------


def quotient(g: MultipartiteGraph) -> QuotientGraph:
    """Graph on part ids with an edge wherever some cross edge exists."""
    pairs = set()
    for e in g.edges:
        i, j = g.part_of(e.u), g.part_of(e.v)
        pairs.add((min(i, j), max(i, j)))
    return QuotientGraph(k=g.k, edges=frozenset(pairs))


def _complete_pair_matrix(g: MultipartiteGraph) -> list[list[bool]]:
    """complete[i][j] == True iff parts i+1 and j+1 are fully joined."""
    k = g.k
    cnt = [[0] * k for _ in range(k)]
    for e in g.edges:
        i, j = g.part_of(e.u) - 1, g.part_of(e.v) - 1
        cnt[i][j] += 1
        cnt[j][i] += 1
    comp = [[False] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            full = len(g.parts[i]) * len(g.parts[j])
            comp[i][j] = comp[j][i] = cnt[i][j] == full
    return comp


def _max_clique(adj: list[list[bool]], k: int) -> tuple[int, ...]:
    """Largest clique of the completeness graph; lexicographically smallest
    vertex set among the maximum ones (Bron-Kerbosch with pivoting)."""
    best: list[tuple[int, ...]] = [()]

    def expand(r: list[int], p: list[int], x: list[int]):
        if not p and not x:
            cand = tuple(sorted(r))
            if len(cand) > len(best[0]) or (len(cand) == len(best[0]) and cand < best[0]):
                best[0] = cand
            return
        pivot = max(p + x, key=lambda u: sum(adj[u][w] for w in p))
        for v in [u for u in p if not adj[pivot][u]]:
            expand(r + [v],
                   [u for u in p if adj[v][u]],
                   [u for u in x if adj[v][u]])
            p.remove(v)
            x.append(v)

    expand([], list(range(k)), [])
    return best[0]


def classify(g: MultipartiteGraph) -> Classification:
    """Completeness class with the minimal t over part reorderings.

    The minimal t equals k minus the largest set of pairwise fully-joined
    parts, found exactly (k is small everywhere this package runs).
    """
    k = g.k
    identity = tuple(range(1, k + 1))
    if k == 1:
        return Classification("Complete", 0, identity)
    comp = _complete_pair_matrix(g)
    if all(comp[i][j] for i in range(k) for j in range(i + 1, k)):
        return Classification("Complete", 0, identity)
    clique = _max_clique(comp, k)
    t = k - len(clique)
    in_clique = set(clique)
    order = tuple(i + 1 for i in range(k) if i not in in_clique) \
        + tuple(i + 1 for i in sorted(in_clique))
    if t == k - 1 and k >= 3:
        return Classification("General", t, order)
    return Classification("TQuasiComplete", t, order)


def with_part_order(g: MultipartiteGraph, order: Sequence[int]) -> MultipartiteGraph:
    """Same graph with parts permuted; order lists 1-based part ids."""
    if sorted(order) != list(range(1, g.k + 1)):
        raise BadParams(f"order {order!r} is not a permutation of 1..{g.k}")
    parts = tuple(g.parts[i - 1] for i in order)
    return MultipartiteGraph(parts, g.edges, names=g.names, coords=g.coords)


def contract(g: MultipartiteGraph, e: Edge) -> MultipartiteGraph:
    """Contract edge e: drop its endpoints, drop every edge between the two
    parts involved, and merge the remains of both parts at the smaller index.
    """
    stored = g.edge(e.u, e.v)  # EdgeAbsent if missing
    i, j = g._part_idx[stored.u], g._part_idx[stored.v]
    if len(g.parts[i]) == 1 and len(g.parts[j]) == 1:
        raise SingletonContraction(
            f"both parts of edge {stored.key} are singletons")
    lo, hi = min(i, j), max(i, j)
    merged = tuple(x for x in sorted(g.parts[i] + g.parts[j])
                   if x != stored.u and x != stored.v)
    parts = [merged if idx == lo else p
             for idx, p in enumerate(g.parts) if idx != hi]
    gone = {stored.u, stored.v}
    pair = {i, j}
    edges = [ed for ed in g.edges
             if ed.u not in gone and ed.v not in gone
             and {g._part_idx[ed.u], g._part_idx[ed.v]} != pair]
    return MultipartiteGraph(parts, edges, names=g.names, coords=g.coords)


def contract_matching(g: MultipartiteGraph, m: Iterable[Edge]) -> MultipartiteGraph:
    """Contract a matching with acyclic projection, one edge at a time.

    The result does not depend on the order (asserted in the test suite);
    edges are processed canonically for determinism anyway.
    """
    edges = sorted((e if isinstance(e, Edge) else Edge.make(*e) for e in m),
                   key=lambda e: e.key)
    used: set[int] = set()
    for e in edges:
        if e.u in used or e.v in used:
            raise NotAMatching(f"vertex reused at edge {e.key}")
        used.add(e.u)
        used.add(e.v)
    # union-find on parts to reject cyclic projections
    root = list(range(g.k + 1))

    def find(a: int) -> int:
        while root[a] != a:
            root[a] = root[root[a]]
            a = root[a]
        return a

    for e in edges:
        a, b = find(g.part_of(e.u)), find(g.part_of(e.v))
        if a == b:
            raise CyclicProjection(f"projection cycle through edge {e.key}")
        root[b] = a

    cur = g
    for e in edges:
        cur = contract(cur, cur.edge(e.u, e.v))
    return cur


def remove_edge(g: MultipartiteGraph, e: Edge) -> MultipartiteGraph:
    """Identical graph without edge e."""
    stored = g.edge(e.u, e.v)
    edges = [ed for ed in g.edges if ed.key != stored.key]
    return MultipartiteGraph(g.parts, edges, names=g.names, coords=g.coords)


def restrict_part_from(g: MultipartiteGraph, p: int, u: int, strict: bool = False) -> MultipartiteGraph:
    """Remove from part p all vertices preceding u (and u itself if strict).

    The vertex order is the global integer order fixed at construction.
    """
    if p < 1 or p > g.k:
        raise BadParams(f"no part {p}")
    old = g.parts[p - 1]
    if u not in old:
        raise BadParams(f"vertex {u} is not in part {p}")
    kept = tuple(x for x in old if x > u or (x == u and not strict))
    if not kept:
        raise EmptyPart(f"restriction would empty part {p}")
    gone = set(old) - set(kept)
    parts = [kept if idx == p - 1 else q for idx, q in enumerate(g.parts)]
    edges = [ed for ed in g.edges if ed.u not in gone and ed.v not in gone]
    return MultipartiteGraph(parts, edges, names=g.names, coords=g.coords)


@dataclass(frozen=True)
class BipartiteRepresentation:
    """Bipartite view: vertices of the first part on the left, the other
    parts (1-based ids) on the right, an edge when any neighbor exists."""

    left: tuple[int, ...]
    right: tuple[int, ...]
    adjacency: dict  # left vertex -> tuple of right part ids, sorted


def bipartite_representation(g: MultipartiteGraph) -> BipartiteRepresentation:
    left = g.parts[0]
    right = tuple(range(2, g.k + 1))
    adjacency = {}
    for u in left:
        ps = sorted({g.part_of(nb) for nb, _ in g.neighbors(u)})
        adjacency[u] = tuple(ps)
    return BipartiteRepresentation(left=left, right=right, adjacency=adjacency)


# -- tree validation ----------------------------------------------------------


def is_interconnection_tree(g: MultipartiteGraph, edges: Sequence[Edge]) -> bool:
    """True iff edges form a matching whose projection spans the parts."""
    if len(edges) != g.k - 1:
        return False
    used: set[int] = set()
    for e in edges:
        if not g.has_edge(e.u, e.v):
            return False
        if e.u in used or e.v in used:
            return False
        used.add(e.u)
        used.add(e.v)
    root = list(range(g.k + 1))

    def find(a: int) -> int:
        while root[a] != a:
            root[a] = root[root[a]]
            a = root[a]
        return a

    comps = g.k
    for e in edges:
        a, b = find(g.part_of(e.u)), find(g.part_of(e.v))
        if a == b:
            return False
        root[b] = a
        comps -= 1
    return comps == 1


# -- instance generators -------------------------------------------------------


def euclidean_instance(points: Sequence[tuple]) -> MultipartiteGraph:
    """Complete multipartite graph over labeled 3D points.

    points -- (part_label, x, y, z) tuples; labels group vertices into parts
    in first-appearance order; edge weights are Euclidean distances.
    """
    if not points:
        raise EmptyPart("no points given")
    labels: list = []
    parts: dict = {}
    coords = {}
    seen = set()
    for vid, (label, x, y, z) in enumerate(points):
        key = (label, float(x), float(y), float(z))
        if key in seen:
            raise DuplicateVertex(f"point {key} declared twice")
        seen.add(key)
        if label not in parts:
            parts[label] = []
            labels.append(label)
        parts[label].append(vid)
        coords[vid] = (float(x), float(y), float(z))
    part_lists = [parts[lbl] for lbl in labels]
    edges = []
    for a in range(len(part_lists)):
        for b in range(a + 1, len(part_lists)):
            for u in part_lists[a]:
                for v in part_lists[b]:
                    (x1, y1, z1), (x2, y2, z2) = coords[u], coords[v]
                    w = math.dist((x1, y1, z1), (x2, y2, z2))
                    edges.append(Edge.make(u, v, w))
    # vertex names: label plus per-part position, unique and stable
    vnames = [""] * len(points)
    counter: dict = {}
    for vid, (label, *_rest) in enumerate(points):
        counter[label] = counter.get(label, 0) + 1
        vnames[vid] = f"{label}{counter[label]}"
    return MultipartiteGraph(part_lists, edges, names=vnames, coords=coords)


def gen_synthetic(part_sizes: Sequence[int], seed: int = 0,
                  w_min: float = 0.1, w_max: float = 10.0) -> MultipartiteGraph:
    """Complete multipartite graph with uniform random weights.

    Same seed, same sizes => bit-identical instance. Weights are drawn in
    canonical edge order from a single seeded generator.
    """
    if not part_sizes or any(s < 1 for s in part_sizes):
        raise BadParams(f"bad part sizes {part_sizes!r}")
    if w_min > w_max:
        raise BadParams(f"w_min {w_min} > w_max {w_max}")
    rng = random.Random(seed)
    parts = []
    nxt = 0
    for s in part_sizes:
        parts.append(list(range(nxt, nxt + s)))
        nxt += s
    pid = {}
    for i, p in enumerate(parts):
        for v in p:
            pid[v] = i
    edges = []
    for u in range(nxt):
        for v in range(u + 1, nxt):
            if pid[u] != pid[v]:
                edges.append(Edge(u, v, rng.uniform(w_min, w_max)))
    names = [f"v{i}" for i in range(nxt)]
    return MultipartiteGraph(parts, edges, names=names)


def reduce_hamiltonian_path(h_edges: Sequence[tuple[int, int]], n_vertices: int) -> MultipartiteGraph:
    """Instance whose interconnection trees biject with the directed
    Hamiltonian paths of the given undirected graph.

    Vertex u of the input becomes a part {2u, 2u+1}: 2u is the "enter" side,
    2u+1 the "leave" side. Each undirected input edge (a, b) yields the two
    edges (leave a, enter b) and (leave b, enter a).
    """
    if n_vertices < 1:
        raise BadParams("need at least one vertex")
    seen = set()
    edges = []
    for a, b in h_edges:
        if a == b or not (0 <= a < n_vertices and 0 <= b < n_vertices):
            raise BadParams(f"bad input edge ({a}, {b})")
        key = (min(a, b), max(a, b))
        if key in seen:
            continue
        seen.add(key)
        edges.append(Edge.make(2 * a + 1, 2 * b, 1.0))
        edges.append(Edge.make(2 * b + 1, 2 * a, 1.0))
    parts = [[2 * u, 2 * u + 1] for u in range(n_vertices)]
    names = []
    for u in range(n_vertices):
        names.extend([f"u{u}in", f"u{u}out"])
    return MultipartiteGraph(parts, edges, names=names)
