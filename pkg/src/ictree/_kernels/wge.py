"""Array-backed weight-guided enumerator.

Branching part is dense part 0 throughout (the caller reorders parts so the
chosen one sits there). Per node, candidate edges touching the branching
part are held as one rank-sorted slice of an arena; taking candidate i
implicitly deletes candidates 0..i from the child, whose slice is the
filtered tail merged with the edges contributed by the absorbed part.
Feasibility of a child is decided in O(1) for the common cases via the
matching bound min(k'-1, mu_A + h) — h merged-in vertices are adjacent to
every remaining part, so they shift the bipartite deficiency — with a tiny
augmenting-path fallback when the bound is not decisive.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from ._backend import USING_NUMBA, compiled, raw
from .be import MAX_SOLUTIONS, _dense_maps, make_decoder, packable


@compiled
def _mu_at_least(pstart, pverts, apm, alive0, alive_part, P,
                 skip_q, skip_u, target, matchv, matchp, vis, queue, pre_a):
    """True iff the bipartite matching between alive branching-part vertices
    and alive partner parts (minus skip_q) has size >= target."""
    if target <= 0:
        return True
    for ii in range(pstart[0], pstart[1]):
        matchv[pverts[ii]] = -1
    for p in range(P):
        matchp[p] = -1
    mu = 0
    for p in range(1, P):
        if alive_part[p] == 0 or p == skip_q:
            continue
        for ii in range(pstart[0], pstart[1]):
            vis[pverts[ii]] = 0
        qh = 0
        qt = 1
        queue[0] = p
        found = -1
        while qh < qt and found == -1:
            cp = queue[qh]
            qh += 1
            for ii in range(pstart[0], pstart[1]):
                a = pverts[ii]
                if alive0[a] == 0 or a == skip_u or vis[a] == 1:
                    continue
                if (apm[a] >> cp) & 1 == 0:
                    continue
                vis[a] = 1
                pre_a[a] = cp
                if matchv[a] == -1:
                    found = a
                    break
                queue[qt] = matchv[a]
                qt += 1
        if found != -1:
            a = found
            while True:
                cp = pre_a[a]
                prev = matchp[cp]
                matchp[cp] = a
                matchv[a] = cp
                if cp == p:
                    break
                a = prev
            mu += 1
            if mu >= target:
                return True
    return False


@compiled
def _some_big_part_reaches_main(pstart, pverts, eidx, alive0, alive_part,
                                P, skip_q, skip_u):
    """True iff some alive partner part (minus skip_q) of size >= 2 has an
    edge into the alive branching-part vertices (minus skip_u)."""
    for p in range(1, P):
        if alive_part[p] == 0 or p == skip_q or pstart[p + 1] - pstart[p] < 2:
            continue
        for zi in range(pstart[p], pstart[p + 1]):
            z = pverts[zi]
            for ii in range(pstart[0], pstart[1]):
                a = pverts[ii]
                if alive0[a] == 1 and a != skip_u and eidx[z, a] >= 0:
                    return True
    return False


@compiled
def wge_run(pstart, pverts, vpart, psize, eu, ev, ew, eidx, apm,
            m, n, P, arena, codes, weights, limit, want_codes):
    alive_part = np.ones(P, np.uint8)
    alive_part[0] = 0
    alive0 = np.ones(n, np.uint8)
    matchv = np.empty(n, np.int32)
    matchp = np.empty(P, np.int32)
    vis = np.empty(n, np.uint8)
    pre_a = np.empty(n, np.int32)
    queue = np.empty(P + 1, np.int32)
    ktmp = np.empty(m + 1, np.int32)
    newe = np.empty(m + 1, np.int32)

    D = P + 2
    f_pos = np.empty(D, np.int32)
    f_len = np.empty(D, np.int32)
    f_q = np.empty(D, np.int32)
    f_u = np.empty(D, np.int32)
    f_uina = np.empty(D, np.uint8)
    f_h = np.empty(D, np.int32)
    f_ptot = np.empty(D, np.int32)
    f_msize = np.empty(D, np.int32)
    pu = np.empty(D, np.int32)
    pv = np.empty(D, np.int32)
    wsum = np.empty(D + 1, np.float64)
    tmp = np.empty(D, np.int64)

    len0 = 0
    for i in range(m):
        if vpart[eu[i]] == 0 or vpart[ev[i]] == 0:
            arena[len0] = i
            len0 += 1

    k_cur = P
    h = 0
    ptot = 0
    for p in range(1, P):
        ptot += psize[p]
    msize = psize[0]
    stride = np.int64(n) * np.int64(n)
    emitted = np.int64(0)
    truncated = False

    d = 0
    f_len[0] = len0
    wsum[0] = 0.0
    # phases: 0 enter, 1 candidate loop, 2 back from child, 7 return
    phase = 0
    done = False
    while not done:
        if phase == 0:
            if k_cur == 2:
                off = d * m
                aborted = False
                for t in range(f_len[d]):
                    ei = arena[off + t]
                    weights[emitted] = wsum[d] + ew[ei]
                    if want_codes:
                        for i in range(d):
                            tmp[i] = np.int64(pu[i]) * n + pv[i]
                        tmp[d] = np.int64(eu[ei]) * n + ev[ei]
                        cnt = d + 1
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
                if aborted:
                    done = True
                else:
                    phase = 7
            else:
                f_pos[d] = 0
                phase = 1
        elif phase == 1:
            if f_pos[d] >= f_len[d]:
                phase = 7
            else:
                off = d * m
                ei = arena[off + f_pos[d]]
                a = eu[ei]
                b = ev[ei]
                if alive_part[vpart[a]] == 1:
                    v, u, q = a, b, vpart[a]
                else:
                    v, u, q = b, a, vpart[b]
                ok = False
                uina = 1 if vpart[u] == 0 else 0
                h2 = h + psize[q] - 1 - (1 - uina)
                if msize + psize[q] > 2:
                    k2 = k_cur - 1
                    ptot2 = ptot - psize[q]
                    need = 2 * (k2 - 1) - ptot2
                    skip_u = u if uina == 1 else -1
                    if need <= 0:
                        ok = True
                    elif k2 - 1 < need:
                        ok = False
                    elif h2 >= need:
                        ok = True
                    else:
                        ok = _mu_at_least(pstart, pverts, apm, alive0,
                                          alive_part, P, q, skip_u,
                                          need - h2, matchv, matchp, vis,
                                          queue, pre_a)
                    if ok and h2 == 0:
                        any_big = False
                        for p in range(1, P):
                            if p != q and alive_part[p] == 1 and psize[p] >= 2:
                                any_big = True
                                break
                        if any_big:
                            ok = _some_big_part_reaches_main(
                                pstart, pverts, eidx, alive0, alive_part,
                                P, q, skip_u)
                if ok:
                    f_q[d] = q
                    f_u[d] = u
                    f_uina[d] = uina
                    f_h[d] = h
                    f_ptot[d] = ptot
                    f_msize[d] = msize
                    alive_part[q] = 0
                    if uina == 1:
                        alive0[u] = 0
                    h = h2
                    ptot -= psize[q]
                    msize += psize[q] - 2
                    k_cur -= 1
                    pu[d] = a
                    pv[d] = b
                    wsum[d + 1] = wsum[d] + ew[ei]
                    kcnt = 0
                    for t in range(f_pos[d] + 1, f_len[d]):
                        e2 = arena[off + t]
                        x = eu[e2]
                        y = ev[e2]
                        xa = alive_part[vpart[x]]
                        ya = alive_part[vpart[y]]
                        if xa == 1 or ya == 1:
                            mv = y if xa == 1 else x
                            if mv != u:
                                ktmp[kcnt] = e2
                                kcnt += 1
                    ncnt = 0
                    for zi in range(pstart[q], pstart[q + 1]):
                        z = pverts[zi]
                        if z == v:
                            continue
                        for p in range(1, P):
                            if alive_part[p] == 0:
                                continue
                            for yi in range(pstart[p], pstart[p + 1]):
                                newe[ncnt] = eidx[z, pverts[yi]]
                                ncnt += 1
                    for i in range(1, ncnt):
                        key = newe[i]
                        j = i - 1
                        while j >= 0 and newe[j] > key:
                            newe[j + 1] = newe[j]
                            j -= 1
                        newe[j + 1] = key
                    off2 = (d + 1) * m
                    i = 0
                    j = 0
                    w = 0
                    while i < kcnt and j < ncnt:
                        if ktmp[i] < newe[j]:
                            arena[off2 + w] = ktmp[i]
                            i += 1
                        else:
                            arena[off2 + w] = newe[j]
                            j += 1
                        w += 1
                    while i < kcnt:
                        arena[off2 + w] = ktmp[i]
                        i += 1
                        w += 1
                    while j < ncnt:
                        arena[off2 + w] = newe[j]
                        j += 1
                        w += 1
                    f_len[d + 1] = w
                    d += 1
                    phase = 0
                else:
                    f_pos[d] += 1
        elif phase == 2:
            q = f_q[d]
            alive_part[q] = 1
            if f_uina[d] == 1:
                alive0[f_u[d]] = 1
            h = f_h[d]
            ptot = f_ptot[d]
            msize = f_msize[d]
            k_cur += 1
            f_pos[d] += 1
            phase = 1
        else:
            if d == 0:
                done = True
            else:
                d -= 1
                phase = 2
    return emitted, truncated


def wge_stream(g2, limit: Optional[int] = None, interpreted: bool = False,
               want_codes: bool = True):
    """ArrayStream over the weight-guided emission order, or None when the
    compiled engine does not apply. Part 1 of g2 must be the branching part
    and the remaining parts pairwise fully joined (the caller arranges both).
    """
    if not USING_NUMBA and not interpreted:
        return None
    n, k = g2.n, g2.k
    if k < 2 or k > 62 or not packable(n, k):
        return None
    from ..count import count_from_sizes
    from ..enumeration import ArrayStream
    from ..graph import classify

    sizes = [len(p) for p in g2.parts]
    bound = count_from_sizes(sizes)
    exact = classify(g2).tag == "Complete"
    cap = bound if limit is None else min(bound, limit)
    if cap > MAX_SOLUTIONS:
        return None
    hard_stop = cap if cap < bound else -1
    codes = np.empty(cap, np.int64)
    weights = np.empty(cap, np.float64)
    if cap == 0:
        return ArrayStream(g2, codes, weights, make_decoder(g2, [], n, k),
                           truncated=bound > 0)

    verts, idx, vpart = _dense_maps(g2)
    P = k
    order = sorted(range(n), key=lambda i: (vpart[i], i))
    pverts = np.array(order, dtype=np.int32)
    pstart = np.zeros(P + 1, np.int32)
    for i in order:
        pstart[vpart[i] + 1] += 1
    for p in range(P):
        pstart[p + 1] += pstart[p]
    psize = np.array([pstart[p + 1] - pstart[p] for p in range(P)], np.int32)

    m = g2.m
    ranked = sorted(range(m), key=lambda i: (g2.edges[i].w,
                                             idx[g2.edges[i].u],
                                             idx[g2.edges[i].v]))
    eu = np.empty(m, np.int32)
    ev = np.empty(m, np.int32)
    ew = np.empty(m, np.float64)
    eidx = np.full((n, n), -1, np.int32)
    apm = np.zeros(n, np.int64)
    for r, i in enumerate(ranked):
        e = g2.edges[i]
        a, b = idx[e.u], idx[e.v]
        if a > b:
            a, b = b, a
        eu[r] = a
        ev[r] = b
        ew[r] = e.w
        eidx[a, b] = r
        eidx[b, a] = r
        apm[a] |= 1 << vpart[b]
        apm[b] |= 1 << vpart[a]
    arena = np.empty(max(1, P * max(1, m)), np.int32)

    run = raw(wge_run) if interpreted else wge_run
    emitted, truncated = run(pstart, pverts, np.asarray(vpart, np.int32),
                             psize, eu, ev, ew, eidx, apm,
                             m, n, P, arena, codes, weights,
                             np.int64(hard_stop), want_codes)
    emitted = int(emitted)
    truncated = bool(truncated) and not (exact and emitted == bound)
    if exact and not truncated and emitted != bound:
        raise RuntimeError(
            f"enumerated {emitted} trees where the closed form gives {bound}")
    return ArrayStream(g2, codes[:emitted], weights[:emitted],
                       make_decoder(g2, verts, n, k),
                       truncated=truncated)
