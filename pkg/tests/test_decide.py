"""Decision procedures: matching machinery, class-specific deciders, FPT search."""
import itertools
import random

import numpy as np
import pytest

import ictree as it
from ictree import MultipartiteGraph, NotComplete, NotQuasiComplete

from conftest import grid_instances


def rand_instance(rng, n_max=12, k_max=5):
    k = rng.randint(1, k_max)
    sizes = [1] * k
    for _ in range(rng.randint(0, n_max - k)):
        sizes[rng.randrange(k)] += 1
    nxt, parts = 0, []
    for s in sizes:
        parts.append(list(range(nxt, nxt + s)))
        nxt += s
    p = rng.choice([0.25, 0.5, 0.75, 1.0])
    edges = []
    for i in range(k):
        for j in range(i + 1, k):
            for u in parts[i]:
                for v in parts[j]:
                    if rng.random() < p:
                        edges.append((u, v, 1.0))
    return MultipartiteGraph(parts, edges)


# -- bipartite matching + cover ---------------------------------------------------

def test_max_matching_simple():
    g = MultipartiteGraph([[0, 1], [2], [3]],
                          [(0, 2, 1.0), (0, 3, 1.0), (1, 2, 1.0)])
    b = it.bipartite_representation(g)
    m = it.max_matching_bipartite(b)
    assert m.size == 2


def test_koenig_cover_equals_matching_size():
    rng = random.Random(3)
    for _ in range(300):
        g = rand_instance(rng, n_max=10, k_max=5)
        b = it.bipartite_representation(g)
        m = it.max_matching_bipartite(b)
        c = it.min_vertex_cover_from_matching(b, m)
        assert c.size == m.size
        # the cover really covers every bp edge
        lefts = set(c.left)
        rights = set(c.right)
        for u in b.left:
            for pid in b.adjacency[u]:
                assert u in lefts or pid in rights


def test_matching_is_a_matching():
    rng = random.Random(4)
    for _ in range(200):
        g = rand_instance(rng)
        b = it.bipartite_representation(g)
        m = it.max_matching_bipartite(b)
        used_u = [u for u, _ in m.edges]
        used_p = [p for _, p in m.edges]
        assert len(used_u) == len(set(used_u))
        assert len(used_p) == len(set(used_p))


# -- complete-case decision (size threshold) --------------------------------------

@pytest.mark.parametrize("sizes,expect", [
    ((1, 1), True),            # n=2, k=2: one edge suffices
    ((2, 2, 2), True),         # n=6 >= 4
    ((1, 1, 1), False),        # n=3 < 4
    ((2, 1, 1), True),         # n=4 >= 4
    ((1, 1, 1, 1, 1), False),  # n=5 < 8
    ((4, 1, 1, 1, 1), True),   # n=8 >= 8
])
def test_decide_complete_threshold(sizes, expect):
    g = it.gen_synthetic(sizes, seed=0)
    assert it.decide_complete(g) is expect


def test_decide_complete_rejects_non_complete():
    g = MultipartiteGraph([[0], [1], [2]], [(0, 1, 1.0)])
    with pytest.raises(NotComplete):
        it.decide_complete(g)


def test_single_part_is_trivially_yes():
    g = MultipartiteGraph([[0, 1, 2]], [])
    assert it.decide_complete(g) is True
    assert it.decide_brute(g) is True


# -- quasi-complete decision -------------------------------------------------------

def test_quasi_requires_joined_tail_parts():
    # parts 2 and 3 are not fully joined -> not accepted by this decider
    g = MultipartiteGraph([[0], [1, 2], [3]],
                          [(0, 1, 1.0), (0, 3, 1.0), (1, 3, 1.0)])
    with pytest.raises(NotQuasiComplete):
        it.decide_quasi_complete(g)


def test_quasi_matching_bound_example():
    # two-vertex head part, singleton tails, the matching bound is tight
    g = MultipartiteGraph([[0, 1], [2], [3]],
                          [(0, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)])
    ans, tree = it.decide_quasi_complete(g, witness=True)
    assert ans is True
    assert it.is_interconnection_tree(g, tree.edges)


def test_quasi_witness_none_when_not_requested():
    g = MultipartiteGraph([[0, 1], [2], [3]],
                          [(0, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)])
    assert it.decide_quasi_complete(g) == (True, None)


def test_quasi_agreement_and_witnesses():
    rng = random.Random(11)
    hits = 0
    for _ in range(700):
        g = rand_instance(rng, n_max=9, k_max=5)
        cls = it.classify(g)
        if cls.t > 1:
            continue
        g2 = it.with_part_order(g, cls.order) if cls.tag != "Complete" else g
        ans, tree = it.decide_quasi_complete(g2, witness=True)
        assert ans == it.decide_brute(g2)
        if ans:
            assert it.is_interconnection_tree(g2, tree.edges)
        hits += 1
    assert hits > 300          # the sampler must actually exercise the class


# -- spanning trees of the quotient ------------------------------------------------

def kirchhoff(k, pairs):
    """Matrix-tree determinant count, the independent oracle."""
    if k == 1:
        return 1
    lap = np.zeros((k, k))
    for i, j in pairs:
        lap[i - 1, i - 1] += 1
        lap[j - 1, j - 1] += 1
        lap[i - 1, j - 1] -= 1
        lap[j - 1, i - 1] -= 1
    return round(np.linalg.det(lap[1:, 1:]))


def test_spanning_trees_match_matrix_tree_oracle():
    rng = random.Random(21)
    for _ in range(400):
        g = rand_instance(rng, n_max=9, k_max=6)
        q = it.quotient(g)
        trees = list(it.spanning_trees_of_quotient(q))
        seen = set()
        for st in trees:
            assert frozenset(st.edges) not in seen
            seen.add(frozenset(st.edges))
            assert len(st.edges) == g.k - 1
            deg = [0] * g.k
            for a, b in st.edges:
                deg[a - 1] += 1
                deg[b - 1] += 1
            assert tuple(deg) == st.degree
        assert len(trees) == kirchhoff(g.k, q.edges)


def test_spanning_trees_of_k4_quotient():
    q = it.quotient(it.gen_synthetic((1, 1, 1, 1), seed=0))
    assert sum(1 for _ in it.spanning_trees_of_quotient(q)) == 16  # 4^{4-2}


# -- FPT decision -------------------------------------------------------------------

def test_fpt_agrees_with_brute_everywhere():
    # the acceptance suite re-runs this at full criterion scale
    rng = random.Random(5)
    for _ in range(400):
        g = rand_instance(rng, n_max=10)
        assert it.decide_fpt(g) == it.decide_brute(g)


def test_fpt_handles_disconnected_quotient():
    g = MultipartiteGraph([[0], [1], [2], [3]],
                          [(0, 1, 1.0), (2, 3, 1.0)])
    assert it.decide_fpt(g) is False


def test_fpt_k_guard():
    g = it.gen_synthetic((1,) * 13, seed=0)
    with pytest.raises(it.Unsupported):
        it.decide_fpt(g)
    # raising the guard admits the instance
    assert it.decide_fpt(g, max_k=13) is False   # 13 singletons: n < 2(k-1)


def test_fpt_on_grid(grid):
    for _, g in grid:
        assert it.decide_fpt(g) == it.decide_brute(g)


# -- brute guard --------------------------------------------------------------------

def test_brute_guard_env_override(monkeypatch):
    g = it.gen_synthetic((3, 3, 3), seed=0)            # C(27, 2) = 351 subsets
    monkeypatch.setenv("ICT_MAX_BRUTE", "100")
    with pytest.raises(it.TooLarge):
        it.decide_brute(g)
    monkeypatch.setenv("ICT_MAX_BRUTE", "1000")
    assert it.decide_brute(g) is True


def test_brute_guard_default_blocks_huge_sweeps():
    big = it.gen_synthetic((5, 5, 5, 5, 5), seed=0)    # C(250, 4) > 10^8
    with pytest.raises(it.TooLarge):
        it.decide_brute(big)
