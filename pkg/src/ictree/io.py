"""Reading and writing instances (JSON, format tag "ict-1") and the
plain-text wire form of a tree.

Vertices are named strings in the file and dense 0-based integers in
memory, assigned in file order part by part. When the file carries
coordinates and no edge list, the instance is the complete multipartite
graph with Euclidean edge weights.
"""

from __future__ import annotations

import json
import math
from typing import Union

from .errors import ParseError
from .graph import InterconnectionTree, MultipartiteGraph

FORMAT_TAG = "ict-1"


def _dist(a, b) -> float:
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


def parse_graph(src: Union[str, dict]) -> MultipartiteGraph:
    """Build a graph from an ict-1 JSON document (text or parsed dict).
    Unknown top-level keys are ignored."""
    if isinstance(src, str):
        try:
            doc = json.loads(src)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not valid JSON: {exc}") from None
    else:
        doc = src
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    if doc.get("format") != FORMAT_TAG:
        raise ParseError(f'expected "format": "{FORMAT_TAG}", got {doc.get("format")!r}')

    raw_parts = doc.get("parts")
    if not isinstance(raw_parts, list) or not raw_parts:
        raise ParseError('"parts" must be a non-empty list of name lists')
    ids: dict[str, int] = {}
    names: list[str] = []
    parts: list[list[int]] = []
    for pi, grp in enumerate(raw_parts):
        if not isinstance(grp, list) or not grp:
            raise ParseError(f"part {pi + 1} must be a non-empty list")
        cur = []
        for name in grp:
            if not isinstance(name, str):
                raise ParseError(f"vertex name {name!r} is not a string")
            if name in ids:
                raise ParseError(f"vertex name {name!r} appears twice")
            ids[name] = len(names)
            cur.append(len(names))
            names.append(name)
        parts.append(cur)

    raw_coords = doc.get("coords")
    coords = None
    if raw_coords is not None:
        if not isinstance(raw_coords, dict):
            raise ParseError('"coords" must be an object of name -> numbers')
        coords = {}
        for name, pt in raw_coords.items():
            if name not in ids:
                raise ParseError(f"coords for unknown vertex {name!r}")
            if (not isinstance(pt, list) or not pt
                    or not all(isinstance(x, (int, float)) for x in pt)):
                raise ParseError(f"coords of {name!r} must be a list of numbers")
            coords[ids[name]] = tuple(float(x) for x in pt)

    raw_edges = doc.get("edges")
    edges = []
    if raw_edges is not None:
        if not isinstance(raw_edges, list):
            raise ParseError('"edges" must be a list')
        for i, ed in enumerate(raw_edges):
            if not isinstance(ed, dict) or "u" not in ed or "v" not in ed:
                raise ParseError(f'edge {i} must be an object with "u" and "v"')
            try:
                u, v = ids[ed["u"]], ids[ed["v"]]
            except (KeyError, TypeError):
                raise ParseError(f"edge {i} references an unknown vertex") from None
            w = ed.get("w", 1.0)
            if not isinstance(w, (int, float)):
                raise ParseError(f"edge {i} weight must be a number")
            edges.append((u, v, float(w)))
    elif coords is not None:
        missing = [nm for nm, vid in ids.items() if vid not in coords]
        if missing:
            raise ParseError(f"no edge list and no coords for {missing[0]!r}")
        dims = {len(pt) for pt in coords.values()}
        if len(dims) != 1:
            raise ParseError("coords must all have the same dimension")
        for pi, pa in enumerate(parts):
            for pb in parts[pi + 1:]:
                for u in pa:
                    for v in pb:
                        edges.append((u, v, _dist(coords[u], coords[v])))
    else:
        raise ParseError('need "edges", or "coords" for a Euclidean instance')

    try:
        return MultipartiteGraph(parts, edges, names=names, coords=coords)
    except Exception as exc:
        raise ParseError(str(exc)) from None


def serialize_graph(g: MultipartiteGraph, extra: dict = None) -> str:
    """JSON text in the ict-1 format; round-trips through parse_graph."""
    doc = {
        "format": FORMAT_TAG,
        "parts": [[g.name_of(v) for v in p] for p in g.parts],
        "edges": [{"u": g.name_of(e.u), "v": g.name_of(e.v), "w": e.w}
                  for e in g.edges],
    }
    if g.coords:
        doc["coords"] = {g.name_of(v): list(pt) for v, pt in sorted(g.coords.items())}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=1)


def format_tree(g: MultipartiteGraph, t: InterconnectionTree) -> str:
    """One-line tree form: space-separated u-v pairs by vertex name, in
    canonical edge order."""
    return " ".join(f"{g.name_of(e.u)}-{g.name_of(e.v)}" for e in t.edges)
