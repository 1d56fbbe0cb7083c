# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled NetNDP kernel. Same contract as ``_pykernel.net_ndp``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef int INF = 1 << 30


def net_ndp(ranks, pranks, mins, maxs, int delta, int gamma, int metric, bint prune):
    cdef int[::1] rk = np.ascontiguousarray(ranks, dtype=np.intc)
    cdef int[::1] pk = np.ascontiguousarray(pranks, dtype=np.intc)
    cdef int[::1] gmin = np.ascontiguousarray(list(mins) + [0], dtype=np.intc)
    cdef int[::1] gmax = np.ascontiguousarray(list(maxs) + [0], dtype=np.intc)
    cdef Py_ssize_t n = rk.shape[0]
    cdef Py_ssize_t m = pk.shape[0]
    cdef Py_ssize_t size = n * m

    cdef int[::1] dist = np.full(size, -1, dtype=np.intc)
    cdef int[::1] bmrd = np.full(size, INF, dtype=np.intc)
    cdef char[::1] alive = np.zeros(size, dtype=np.int8)
    cdef int[::1] pmrd = np.full(size, INF, dtype=np.intc)
    cdef int[::1] stamp = np.full(size, -1, dtype=np.intc)
    cdef int[::1] occ = np.zeros(max(m, 1), dtype=np.intc)

    cdef long nodes = 0, edges = 0, pruned_nodes = 0, pruned_edges = 0
    cdef Py_ssize_t i, j, q, k, base, lo, hi
    cdef int r, pr, d, best, npar, mr, g
    cdef int pass_id = 0
    cdef Py_ssize_t root, leaf

    for i in range(n):
        r = rk[i]
        if r < 0:
            continue
        for j in range(m):
            pr = pk[j]
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
            lo = i - gmax[j - 1] - 1
            if lo < 0:
                lo = 0
            hi = i - gmin[j - 1] - 1
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
    for root in range(n - 1, -1, -1):
        if not alive[root]:
            continue
        pass_id += 1
        leaf = _reach_leaf(root, n, m, dist, bmrd, alive, pmrd, stamp,
                           gmin, gmax, gamma, prune, pass_id)
        if leaf < 0:
            continue
        if _right_occ(leaf, n, m, dist, bmrd, alive, pmrd, stamp,
                      gmin, gmax, gamma, prune, pass_id, occ) < 0:
            raise RuntimeError("no parent within budget; MRDs are stale")
        g = 0
        for j in range(m):
            g += dist[j * n + occ[j]]
            alive[j * n + occ[j]] = 0
        occs.append(tuple([occ[j] + 1 for j in range(m)]))
        gdists.append(g)
    return occs, gdists, (nodes, edges, pruned_nodes, pruned_edges)


cdef Py_ssize_t _reach_leaf(Py_ssize_t root, Py_ssize_t n, Py_ssize_t m,
                            int[::1] dist, int[::1] bmrd, char[::1] alive,
                            int[::1] pmrd, int[::1] stamp,
                            int[::1] gmin, int[::1] gmax,
                            int gamma, bint prune, int pass_id) nogil:
    cdef Py_ssize_t j, c, q, k, kq, base, pbase, c_lo, c_hi, p_lo, p_hi
    cdef Py_ssize_t lal, ral, new_lal, new_ral
    cdef int dc, best, v, mn, mx
    if dist[root] > gamma:
        return -1
    pmrd[root] = dist[root]
    stamp[root] = pass_id
    lal = root
    ral = root
    for j in range(1, m):
        mn = gmin[j - 1]
        mx = gmax[j - 1]
        base = j * n
        pbase = (j - 1) * n
        c_lo = lal + mn + 1
        c_hi = ral + mx + 1
        if c_hi > n - 1:
            c_hi = n - 1
        new_lal = -1
        new_ral = -1
        for c in range(c_lo, c_hi + 1):
            k = base + c
            if not alive[k]:
                continue
            dc = dist[k]
            p_lo = c - mx - 1
            if p_lo < lal:
                p_lo = lal
            p_hi = c - mn - 1
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


cdef int _right_occ(Py_ssize_t leaf, Py_ssize_t n, Py_ssize_t m,
                    int[::1] dist, int[::1] bmrd, char[::1] alive,
                    int[::1] pmrd, int[::1] stamp,
                    int[::1] gmin, int[::1] gmax,
                    int gamma, bint prune, int pass_id, int[::1] occ) nogil:
    cdef Py_ssize_t j, q, kq, pbase, lo, cur, chosen
    cdef int dc, budget
    occ[m - 1] = <int>leaf
    cur = leaf
    budget = gamma
    for j in range(m - 1, 0, -1):
        dc = dist[j * n + cur]
        budget -= dc
        pbase = (j - 1) * n
        lo = cur - gmax[j - 1] - 1
        if lo < 0:
            lo = 0
        chosen = -1
        q = cur - gmin[j - 1] - 1
        while q >= lo:
            kq = pbase + q
            if stamp[kq] == pass_id and alive[kq]:
                if not (prune and bmrd[kq] + dc > gamma):
                    if pmrd[kq] <= budget:
                        chosen = q
                        break
            q -= 1
        if chosen < 0:
            return -1
        occ[j - 1] = <int>chosen
        cur = chosen
    return 0
