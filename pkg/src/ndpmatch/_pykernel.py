"""Pure-Python NetNDP kernel over flat arrays.

Mirror of ``_ckernel.pyx``; used when the compiled module is unavailable.
Node ``(j, i)`` (0-based level and position) lives at index ``j * n + i``.
An edge exists between materialized nodes ``(j-1, r)`` and ``(j, i)`` iff
the gap constraint holds and, when pruning, ``bmrd[j-1, r] + dist[j, i] <= gamma``.
Build-time values never change afterwards, so edges are recomputed on
demand instead of stored.
"""

INF = 1 << 30


def net_ndp(ranks, pranks, mins, maxs, delta, gamma, metric, prune):
    """Run build + right-to-left root scan.

    ``metric`` is 0 for ordinal, 1 for indicator. ``ranks`` entries < 0 never
    match. Returns ``(occurrences, gdists, (nodes, edges, pruned_nodes, pruned_edges))``
    with 1-based positions, occurrences in discovery order.
    """
    n = len(ranks)
    m = len(pranks)
    size = n * m
    dist = [-1] * size      # -1: not materialized
    bmrd = [INF] * size
    alive = [0] * size
    pmrd = [INF] * size
    stamp = [-1] * size
    nodes = edges = pruned_nodes = pruned_edges = 0

    # build
    for i in range(n):
        r = ranks[i]
        if r < 0:
            continue
        for j in range(m):
            pr = pranks[j]
            if metric:
                d = 0 if r == pr else 1
            else:
                d = r - pr if r >= pr else pr - r
            if d > delta:
                continue
            k = j * n + i
            if j == 0:
                if prune and d > gamma:
                    pruned_nodes += 1
                    continue
                dist[k] = d
                bmrd[k] = d
                alive[k] = 1
                nodes += 1
                continue
            lo = i - maxs[j - 1] - 1
            if lo < 0:
                lo = 0
            hi = i - mins[j - 1] - 1
            if hi < 0:
                continue
            base = (j - 1) * n
            best = INF
            npar = 0
            for q in range(lo, hi + 1):
                if dist[base + q] >= 0:
                    npar += 1
                    if bmrd[base + q] < best:
                        best = bmrd[base + q]
            if npar == 0:
                continue
            mr = best + d
            if prune and mr > gamma:
                pruned_nodes += 1
                pruned_edges += npar
                continue
            dist[k] = d
            bmrd[k] = mr
            alive[k] = 1
            nodes += 1
            if prune:
                for q in range(lo, hi + 1):
                    if dist[base + q] >= 0:
                        if bmrd[base + q] + d <= gamma:
                            edges += 1
                        else:
                            pruned_edges += 1
            else:
                edges += npar

    occs = []
    gdists = []
    pass_id = 0
    for root in range(n - 1, -1, -1):
        if not alive[root]:
            continue
        pass_id += 1
        leaf = _reach_leaf(root, n, m, dist, bmrd, alive, pmrd, stamp,
                           mins, maxs, gamma, prune, pass_id)
        if leaf < 0:
            continue
        occ = _right_occ(leaf, n, m, dist, bmrd, alive, pmrd, stamp,
                         mins, maxs, gamma, prune, pass_id)
        g = 0
        for j in range(m):
            g += dist[j * n + occ[j]]
            alive[j * n + occ[j]] = 0
        occs.append(tuple(x + 1 for x in occ))
        gdists.append(g)
    return occs, gdists, (nodes, edges, pruned_nodes, pruned_edges)


def _reach_leaf(root, n, m, dist, bmrd, alive, pmrd, stamp, mins, maxs, gamma, prune, pass_id):
    d0 = dist[root]
    if d0 > gamma:
        return -1
    pmrd[root] = d0
    stamp[root] = pass_id
    lal = ral = root
    for j in range(1, m):
        gmin = mins[j - 1]
        gmax = maxs[j - 1]
        base = j * n
        pbase = (j - 1) * n
        c_lo = lal + gmin + 1
        c_hi = ral + gmax + 1
        if c_hi > n - 1:
            c_hi = n - 1
        new_lal = -1
        new_ral = -1
        for c in range(c_lo, c_hi + 1):
            k = base + c
            if not alive[k]:
                continue
            dc = dist[k]
            p_lo = c - gmax - 1
            if p_lo < lal:
                p_lo = lal
            p_hi = c - gmin - 1
            if p_hi > ral:
                p_hi = ral
            best = INF
            for q in range(p_lo, p_hi + 1):
                kq = pbase + q
                if stamp[kq] != pass_id or not alive[kq]:
                    continue
                if prune and bmrd[kq] + dc > gamma:
                    continue
                if pmrd[kq] < best:
                    best = pmrd[kq]
            if best >= INF:
                continue
            v = best + dc
            if v > gamma:
                continue
            pmrd[k] = v
            stamp[k] = pass_id
            if new_lal < 0:
                new_lal = c
            new_ral = c
        if new_lal < 0:
            return -1
        lal = new_lal
        ral = new_ral
    return ral


def _right_occ(leaf, n, m, dist, bmrd, alive, pmrd, stamp, mins, maxs, gamma, prune, pass_id):
    occ = [0] * m
    occ[m - 1] = leaf
    cur = leaf
    budget = gamma
    for j in range(m - 1, 0, -1):
        dc = dist[j * n + cur]
        budget -= dc
        pbase = (j - 1) * n
        lo = cur - maxs[j - 1] - 1
        if lo < 0:
            lo = 0
        chosen = -1
        for q in range(cur - mins[j - 1] - 1, lo - 1, -1):
            kq = pbase + q
            if stamp[kq] != pass_id or not alive[kq]:
                continue
            if prune and bmrd[kq] + dc > gamma:
                continue
            if pmrd[kq] <= budget:
                chosen = q
                break
        if chosen < 0:
            raise RuntimeError("no parent within budget; MRDs are stale")
        occ[j - 1] = chosen
        cur = chosen
    return occ
