"""Compiled kernels must be observably identical to the pure-python engines:
same solution sequences, same instrumentation counters, same truncation flags.
The `interpreted=True` switch runs the same kernel code uncompiled, so these
tests hold with or without the JIT backend."""
import random

import numpy as np
import pytest

import ictree as it
from ictree import _kernels
from ictree.weighted import branch_ordered

from conftest import tree_keys

BE_SHAPES = [
    (1, 1), (3, 2), (2, 2, 2), (3, 2, 1), (2, 1, 1), (3, 3, 2),
    (2, 2, 2, 2), (3, 2, 2, 1), (4, 3, 2), (2, 2, 1, 1, 1), (3, 3, 3),
    (1, 1, 1, 1), (2, 2, 2, 1, 1),
]


def be_python(g):
    s = it.enum_unbounded_branching(g, engine="python")
    seq = [tree_keys(t) for t in s]
    return seq, s.stats["ops"], s.stats["max_gap"]


@pytest.mark.parametrize("sizes", BE_SHAPES)
def test_be_kernel_bitwise_parity(sizes):
    g = it.gen_synthetic(sizes, seed=sum(sizes))
    seq, ops, gap = be_python(g)
    ks = _kernels.be_stream(g, interpreted=not _kernels.USING_NUMBA)
    kseq = [tree_keys(t) for t in ks]
    assert kseq == seq
    assert ks.stats["ops"] == ops
    assert ks.stats["max_gap"] == gap
    assert not ks.truncated


def test_be_kernel_interpreted_equals_compiled():
    if not _kernels.USING_NUMBA:
        pytest.skip("compiled backend disabled in this process")
    g = it.gen_synthetic((3, 3, 2), seed=4)
    a = _kernels.be_stream(g)
    b = _kernels.be_stream(g, interpreted=True)
    assert [tree_keys(t) for t in a] == [tree_keys(t) for t in b]
    assert a.stats == b.stats


def test_be_kernel_limit_semantics():
    interp = not _kernels.USING_NUMBA
    g = it.gen_synthetic((3, 3, 2), seed=7)
    total = it.count_complete(g)
    head = _kernels.be_stream(g, limit=5, interpreted=interp)
    assert len(head) == 5 and head.truncated
    exact = _kernels.be_stream(g, limit=total, interpreted=interp)
    assert len(exact) == total and not exact.truncated
    over = _kernels.be_stream(g, limit=total + 10, interpreted=interp)
    assert len(over) == total and not over.truncated


def test_be_kernel_prefix_of_full_sequence():
    interp = not _kernels.USING_NUMBA
    g = it.gen_synthetic((3, 2, 2), seed=2)
    full = [tree_keys(t) for t in _kernels.be_stream(g, interpreted=interp)]
    head = [tree_keys(t)
            for t in _kernels.be_stream(g, limit=7, interpreted=interp)]
    assert head == full[:7]


def test_be_stream_refuses_what_it_cannot_pack():
    # 40 parts of 2: (n^2)^(k-1) blows past 2^62, wrapper must decline
    g = it.gen_synthetic((2,) * 40, seed=0)
    assert not _kernels.packable(g.n, g.k)
    assert _kernels.be_stream(g) is None


WGE_SHAPES = [(2, 2), (3, 2, 1), (2, 2, 2), (3, 3, 2), (2, 2, 2, 2),
              (4, 3, 2), (3, 2, 2, 1)]


@pytest.mark.parametrize("sizes", WGE_SHAPES)
@pytest.mark.parametrize("heuristic", it.HEURISTICS)
def test_wge_kernel_sequence_parity(sizes, heuristic):
    g = it.gen_synthetic(sizes, seed=11 + sum(sizes))
    pseq = [tree_keys(t) for t in it.enum_wge(g, heuristic, engine="python")]
    g2 = branch_ordered(g, heuristic)
    ks = _kernels.wge_stream(g2, interpreted=not _kernels.USING_NUMBA)
    assert [tree_keys(t) for t in ks] == pseq
    assert not ks.truncated


def test_wge_kernel_parity_on_quasi_complete_instances():
    rng = random.Random(5)
    found = 0
    while found < 12:
        sizes = tuple(rng.randint(1, 3) for _ in range(rng.randint(2, 4)))
        g = it.gen_synthetic(sizes, seed=rng.randrange(10 ** 6))
        kept = [e for e in g.edges if rng.random() < 0.7]
        try:
            g = it.MultipartiteGraph(g.parts, kept)
        except it.IctError:
            continue
        if it.classify(g).t > 1:
            continue
        for h in it.HEURISTICS:
            pseq = [tree_keys(t) for t in it.enum_wge(g, h, engine="python")]
            g2 = branch_ordered(g, h)
            ks = _kernels.wge_stream(g2, interpreted=not _kernels.USING_NUMBA)
            if ks is None:
                continue
            assert [tree_keys(t) for t in ks] == pseq, (sizes, h)
        found += 1


def test_wge_kernel_limit_prefix():
    interp = not _kernels.USING_NUMBA
    g = it.gen_synthetic((3, 3, 2), seed=9)
    g2 = branch_ordered(g, "MinEdge")
    full = [tree_keys(t) for t in _kernels.wge_stream(g2, interpreted=interp)]
    head = _kernels.wge_stream(g2, limit=4, interpreted=interp)
    assert [tree_keys(t) for t in head] == full[:4]
    assert head.truncated


def test_engine_auto_prefers_kernel_but_is_equivalent():
    g = it.gen_synthetic((4, 3, 3), seed=14)
    auto = [tree_keys(t) for t in it.enum_unbounded_branching(g)]
    forced = [tree_keys(t) for t in it.enum_unbounded_branching(g, engine="python")]
    assert auto == forced


def test_count_inversions_kernel_matches_quadratic():
    rng = random.Random(1)
    for _ in range(40):
        n = rng.randrange(0, 400)
        ws = [rng.uniform(-10, 10) for _ in range(n)]
        want = sum(1 for i in range(n) for j in range(i + 1, n)
                   if ws[i] > ws[j])
        assert _kernels.count_inversions(np.asarray(ws)) == want


def test_count_inversions_handles_ties():
    assert _kernels.count_inversions(np.array([2.0, 2.0, 1.0, 2.0])) == 2
    assert _kernels.count_inversions(np.array([], dtype=float)) == 0
