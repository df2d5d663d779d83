"""Shared fixtures: the small-instance grid and a hand-built 4-part motif."""
import random

import pytest

import ictree as it

# One line per release gate, filled in by test_acceptance.report and echoed
# after the run so the verdicts survive output capture.
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

# Part-size shapes for the exhaustive small-instance grid.  Everything here
# is small enough for the brute-force oracle to sweep in well under a second.
GRID_SHAPES = [
    (2,), (1, 1), (2, 2), (3, 2), (4, 3),
    (1, 1, 1), (2, 1, 1), (2, 2, 2), (3, 2, 1), (3, 3, 2),
    (2, 2, 1, 1), (2, 2, 2, 2), (3, 2, 2, 1),
    (1, 1, 1, 1, 1), (2, 2, 2, 1, 1),
]


def thin(g: it.MultipartiteGraph, density: float, seed: int) -> it.MultipartiteGraph:
    """Seeded random edge-subgraph of g on the same parts."""
    rng = random.Random(seed)
    kept = [e for e in g.edges if rng.random() < density]
    return it.MultipartiteGraph(g.parts, kept)


def grid_instances():
    """(name, graph) pairs covering complete, quasi-complete and general
    classes plus sparse/disconnected stragglers."""
    out = []
    for shape in GRID_SHAPES:
        seed = 1000 + 31 * len(shape) + sum(shape)
        g = it.gen_synthetic(shape, seed=seed)
        out.append((f"complete{shape}", g))
        if g.m > 1:
            out.append((f"dense{shape}", thin(g, 0.8, seed + 1)))
            out.append((f"sparse{shape}", thin(g, 0.45, seed + 2)))
    return out


def equal_weight_instances():
    """The same grid with every edge weight forced to 1.0 (tie stress)."""
    out = []
    for name, g in grid_instances():
        flat = it.MultipartiteGraph(
            g.parts, [(e.u, e.v, 1.0) for e in g.edges])
        out.append((name, flat))
    return out


def tree_keys(t: it.InterconnectionTree) -> tuple:
    return tuple(e.key for e in t.edges)


def solution_set(stream) -> set:
    return {tree_keys(t) for t in stream}


def brute_set(g: it.MultipartiteGraph) -> set:
    return solution_set(it.enum_brute(g))


@pytest.fixture(scope="session")
def grid():
    return grid_instances()


@pytest.fixture(scope="session")
def equal_weight_grid():
    return equal_weight_instances()


@pytest.fixture(scope="session")
def binding_motif_instance():
    """Hand-assembled 4-part instance with known answers: 16 vertices,
    16 unit-weight edges, interconnection trees exist (e.g. the matching
    1-6 / 2-3 / 7-11 projects onto a spanning tree of the parts)."""
    parts = [[1, 2], [3, 4], [5, 6, 7, 8, 9, 10], [11, 12, 13, 14, 15, 16]]
    pairs = [(1, 6), (1, 7), (1, 5), (1, 4), (1, 3), (2, 3), (3, 7), (3, 8),
             (3, 12), (4, 8), (4, 13), (4, 14), (7, 11), (8, 12), (9, 16),
             (10, 15)]
    return it.MultipartiteGraph(parts, [(u, v, 1.0) for u, v in pairs])
