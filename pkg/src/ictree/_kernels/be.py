"""Array-backed branching enumerator for complete multipartite graphs.

Mirrors the streaming workspace engine move for move — same branch order,
same counted operations — but runs as one compiled pass that fills a packed
code array and a weight array.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from ._backend import USING_NUMBA, compiled, raw

MAX_SOLUTIONS = 60_000_000
CODE_BITS_LIMIT = 2 ** 62


@compiled
def _part_min(nxt, seg_next, seg_head, n, h):
    """Smallest alive vertex of current part h, -1 when empty."""
    best = -1
    p = seg_head[h]
    while p != -1:
        v = nxt[n + p]
        if v < n and (best == -1 or v < best):
            best = v
        p = seg_next[p]
    return best


@compiled
def _part_next(nxt, seg_next, seg_head, n, h, after):
    """Smallest alive vertex of current part h greater than after, -1 if none."""
    best = -1
    p = seg_head[h]
    while p != -1:
        v = nxt[n + p]
        while v < n and v <= after:
            v = nxt[v]
        if v < n and (best == -1 or v < best):
            best = v
        p = seg_next[p]
    return best


@compiled
def _select_main(hnxt, size_cur, P):
    """Largest current part, ties to the smallest handle."""
    best = -1
    best_size = -1
    h = hnxt[P]
    while h != P:
        if size_cur[h] > best_size:
            best = h
            best_size = size_cur[h]
        h = hnxt[h]
    return best


@compiled
def be_run(nxt, prv, seg_next, seg_prev, seg_head, seg_tail,
           hnxt, hprv, size_cur, W, n, P,
           codes, weights, limit, want_codes):
    n_cur = 0
    for h in range(P):
        n_cur += size_cur[h]
    k_cur = P

    ops = np.int64(0)
    last_emit = np.int64(0)
    max_gap = np.int64(0)
    emitted = np.int64(0)
    truncated = False

    jcap = 2 * (n + P) + 16
    jkind = np.empty(jcap, np.int32)
    ja = np.empty(jcap, np.int32)
    jb = np.empty(jcap, np.int32)
    jc = np.empty(jcap, np.int32)
    jd = np.empty(jcap, np.int32)
    jtop = 0

    D = P + 2
    f_hm = np.empty(D, np.int32)
    f_u = np.empty(D, np.int32)
    f_hq = np.empty(D, np.int32)
    f_v = np.empty(D, np.int32)
    f_mark = np.empty(D, np.int32)
    f_skip = np.empty(D, np.uint8)
    pu = np.empty(D, np.int32)
    pv = np.empty(D, np.int32)
    wsum = np.empty(D + 1, np.float64)
    wsum[0] = 0.0
    tmp = np.empty(D, np.int64)

    stride = np.int64(n) * np.int64(n)

    # phases: 0 enter, 1 partner init, 2 branch, 3 after child,
    #         4 next partner, 5 advance u, 6 u loop top, 7 return
    d = 0
    phase = 0
    done = False
    while not done:
        if phase == 0:
            if k_cur == 2:
                h1 = hnxt[P]
                h2 = hnxt[h1]
                if size_cur[h2] > size_cur[h1]:
                    hm, ho = h2, h1
                else:
                    hm, ho = h1, h2
                aborted = False
                u = _part_min(nxt, seg_next, seg_head, n, hm)
                while u != -1 and not aborted:
                    v = _part_min(nxt, seg_next, seg_head, n, ho)
                    while v != -1:
                        ops += 1  # the branch test; with two parts it always passes
                        gap = ops - last_emit
                        if gap > max_gap:
                            max_gap = gap
                        last_emit = ops
                        weights[emitted] = wsum[d] + W[u, v]
                        if want_codes:
                            cnt = 0
                            for i in range(d):
                                a, b = pu[i], pv[i]
                                if a > b:
                                    a, b = b, a
                                tmp[cnt] = np.int64(a) * n + b
                                cnt += 1
                            a, b = u, v
                            if a > b:
                                a, b = b, a
                            tmp[cnt] = np.int64(a) * n + b
                            cnt += 1
                            for i in range(1, cnt):
                                key = tmp[i]
                                j = i - 1
                                while j >= 0 and tmp[j] > key:
                                    tmp[j + 1] = tmp[j]
                                    j -= 1
                                tmp[j + 1] = key
                            code = np.int64(0)
                            for i in range(cnt):
                                code = code * stride + tmp[i]
                            codes[emitted] = code
                        emitted += 1
                        if limit >= 0 and emitted == limit:
                            truncated = True
                            aborted = True
                            break
                        v = _part_next(nxt, seg_next, seg_head, n, ho, v)
                    u = _part_next(nxt, seg_next, seg_head, n, hm, u)
                if aborted:
                    done = True
                else:
                    phase = 7
            else:
                f_hm[d] = _select_main(hnxt, size_cur, P)
                phase = 6
        elif phase == 6:  # u loop top
            hm = f_hm[d]
            if size_cur[hm] == 0:
                phase = 7
            else:
                f_u[d] = _part_min(nxt, seg_next, seg_head, n, hm)
                hq = hnxt[P]
                if hq == hm:
                    hq = hnxt[hq]
                f_hq[d] = hq
                phase = 1
        elif phase == 1:  # partner init
            hm = f_hm[d]
            hq = f_hq[d]
            f_skip[d] = 1 if (size_cur[hm] == 1 and size_cur[hq] == 1) else 0
            f_v[d] = _part_min(nxt, seg_next, seg_head, n, hq)
            phase = 2
        elif phase == 2:  # branch on (u, v)
            ops += 1  # feasibility test
            if n_cur - 2 < 2 * (k_cur - 2):
                phase = 7  # no later branch at this node can pass either
            elif f_skip[d] == 1:
                phase = 4  # merging two singletons leaves an empty part
            else:
                hm = f_hm[d]
                hq = f_hq[d]
                u = f_u[d]
                v = f_v[d]
                f_mark[d] = jtop
                ops += 1  # unlink u
                nxt[prv[u]] = nxt[u]
                prv[nxt[u]] = prv[u]
                size_cur[hm] -= 1
                n_cur -= 1
                jkind[jtop] = 0
                ja[jtop] = u
                jb[jtop] = hm
                jtop += 1
                ops += 1  # unlink v
                nxt[prv[v]] = nxt[v]
                prv[nxt[v]] = prv[v]
                size_cur[hq] -= 1
                n_cur -= 1
                jkind[jtop] = 0
                ja[jtop] = v
                jb[jtop] = hq
                jtop += 1
                ops += 1  # merge parts
                if hm < hq:
                    win, lose = hm, hq
                else:
                    win, lose = hq, hm
                old_tail = seg_tail[win]
                lose_size = size_cur[lose]
                seg_next[old_tail] = seg_head[lose]
                seg_prev[seg_head[lose]] = old_tail
                seg_tail[win] = seg_tail[lose]
                hnxt[hprv[lose]] = hnxt[lose]
                hprv[hnxt[lose]] = hprv[lose]
                size_cur[win] = size_cur[hm] + size_cur[hq]
                k_cur -= 1
                jkind[jtop] = 1
                ja[jtop] = win
                jb[jtop] = lose
                jc[jtop] = old_tail
                jd[jtop] = lose_size
                jtop += 1
                pu[d] = u
                pv[d] = v
                wsum[d + 1] = wsum[d] + W[u, v]
                d += 1
                phase = 0
        elif phase == 3:  # back from child: undo, then next v
            m = f_mark[d]
            while jtop > m:
                ops += 1
                jtop -= 1
                if jkind[jtop] == 0:
                    a = ja[jtop]
                    b = jb[jtop]
                    nxt[prv[a]] = a
                    prv[nxt[a]] = a
                    size_cur[b] += 1
                    n_cur += 1
                else:
                    a = ja[jtop]
                    b = jb[jtop]
                    c = jc[jtop]
                    ls = jd[jtop]
                    seg_next[c] = -1
                    seg_prev[seg_head[b]] = -1
                    seg_tail[a] = c
                    hnxt[hprv[b]] = b
                    hprv[hnxt[b]] = b
                    size_cur[b] = ls
                    size_cur[a] -= ls
                    k_cur += 1
            v2 = _part_next(nxt, seg_next, seg_head, n, f_hq[d], f_v[d])
            if v2 != -1:
                f_v[d] = v2
                phase = 2
            else:
                phase = 4
        elif phase == 4:  # next partner part
            hm = f_hm[d]
            hq = hnxt[f_hq[d]]
            if hq == hm:
                hq = hnxt[hq]
            if hq == P:
                phase = 5
            else:
                f_hq[d] = hq
                phase = 1
        elif phase == 5:  # advance u: remove it for the rest of this node
            u = f_u[d]
            hm = f_hm[d]
            ops += 1
            nxt[prv[u]] = nxt[u]
            prv[nxt[u]] = prv[u]
            size_cur[hm] -= 1
            n_cur -= 1
            jkind[jtop] = 0
            ja[jtop] = u
            jb[jtop] = hm
            jtop += 1
            phase = 6
        else:  # phase 7: return
            if d == 0:
                done = True
            else:
                d -= 1
                phase = 3

    gap = ops - last_emit
    if gap > max_gap:
        max_gap = gap
    return emitted, ops, max_gap, truncated


def _dense_maps(g):
    verts = g.vertices()
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    vpart = np.empty(n, np.int32)
    for i, v in enumerate(verts):
        vpart[i] = g.part_of(v) - 1
    return verts, idx, vpart


def _weight_matrix(g, idx, n):
    W = np.zeros((n, n), np.float64)
    for e in g.edges:
        a, b = idx[e.u], idx[e.v]
        W[a, b] = e.w
        W[b, a] = e.w
    return W


def packable(n: int, k: int) -> bool:
    """True when a k-1 edge tree over n vertices fits one signed 64-bit code."""
    if k < 2:
        return False
    return (n * n) ** (k - 1) <= CODE_BITS_LIMIT


def make_decoder(g, idx_to_vertex, n: int, k: int):
    from ..graph import InterconnectionTree

    stride = n * n

    def decode(code: int):
        edges = []
        for _ in range(k - 1):
            code, digit = divmod(code, stride)
            a, b = divmod(digit, n)
            edges.append(g.edge(idx_to_vertex[a], idx_to_vertex[b]))
        return InterconnectionTree(tuple(edges))

    return decode


def be_stream(g, limit: Optional[int] = None, interpreted: bool = False,
              want_codes: bool = True):
    """ArrayStream over all interconnection trees of a complete multipartite
    graph, or None when the compiled engine does not apply."""
    if not USING_NUMBA and not interpreted:
        return None
    n, k = g.n, g.k
    if k < 2 or not packable(n, k):
        return None
    from ..count import count_from_sizes
    from ..enumeration import ArrayStream

    total = count_from_sizes([len(p) for p in g.parts])
    cap = total if limit is None else min(total, limit)
    if cap > MAX_SOLUTIONS:
        return None
    # a cap below the true count aborts the run there; otherwise run to the end
    hard_stop = cap if cap < total else -1
    codes = np.empty(cap, np.int64)
    weights = np.empty(cap, np.float64)
    if cap == 0 and total > 0:
        # limit=0 on a feasible instance: nothing may be emitted, and the
        # machine writes each solution before checking the stop sentinel,
        # so it must not run against zero-length buffers.
        return ArrayStream(g, codes, weights,
                           make_decoder(g, [], n, k),
                           stats={"ops": 0, "max_gap": 0}, truncated=True)

    verts, idx, vpart = _dense_maps(g)
    P = k
    nxt = np.empty(n + P, np.int32)
    prv = np.empty(n + P, np.int32)
    for p in range(P):
        s = n + p
        nxt[s] = s
        prv[s] = s
    last = [n + p for p in range(P)]
    for v in range(n):
        p = int(vpart[v])
        sent = n + p
        t = last[p]
        nxt[t] = v
        prv[v] = t
        nxt[v] = sent
        prv[sent] = v
        last[p] = v
    seg_next = np.full(P, -1, np.int32)
    seg_prev = np.full(P, -1, np.int32)
    seg_head = np.arange(P, dtype=np.int32)
    seg_tail = np.arange(P, dtype=np.int32)
    hnxt = np.empty(P + 1, np.int32)
    hprv = np.empty(P + 1, np.int32)
    for h in range(P + 1):
        hnxt[h] = h + 1 if h < P else 0
        hprv[h] = h - 1 if h > 0 else P
    size_cur = np.zeros(P, np.int32)
    for v in range(n):
        size_cur[vpart[v]] += 1
    W = _weight_matrix(g, idx, n)

    run = raw(be_run) if interpreted else be_run
    emitted, ops, max_gap, truncated = run(
        nxt, prv, seg_next, seg_prev, seg_head, seg_tail, hnxt, hprv,
        size_cur, W, n, P, codes, weights, np.int64(hard_stop),
        want_codes)
    emitted = int(emitted)
    truncated = bool(truncated) and emitted < total
    if not truncated and emitted != total:
        raise RuntimeError(
            f"enumerated {emitted} trees where the closed form gives {total}")
    return ArrayStream(g, codes[:emitted], weights[:emitted],
                       make_decoder(g, verts, n, k),
                       truncated=truncated,
                       stats={"ops": int(ops), "max_gap": int(max_gap)})
