# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled Dinic max-flow kernel (int64 capacities).

Arc-for-arc mirror of the pure-Python kernel in _dinic.py; both must keep
the same adjacency and iteration order so flow assignments agree exactly.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t


def max_flow_kernel(int n, src_in, dst_in, cap_in, int s, int t):
    cdef int m = len(src_in)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] src = np.asarray(src_in, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] dst = np.asarray(dst_in, dtype=np.int32)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] cap = np.asarray(cap_in, dtype=np.int64)

    # CSR adjacency over the 2m arcs (forward 2i, reverse 2i+1), preserving
    # input arc order within each vertex's list.
    cdef cnp.ndarray[cnp.int32_t, ndim=1] deg = np.zeros(n + 1, dtype=np.int32)
    cdef int i, u, v
    for i in range(m):
        deg[src[i] + 1] += 1
        deg[dst[i] + 1] += 1
    cdef cnp.ndarray[cnp.int32_t, ndim=1] start = np.cumsum(deg, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] fill = start[:n].copy()
    cdef cnp.ndarray[cnp.int32_t, ndim=1] adj = np.empty(2 * m, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] to = np.empty(2 * m, dtype=np.int32)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] capacity = np.empty(2 * m, dtype=np.int64)
    for i in range(m):
        adj[fill[src[i]]] = 2 * i
        fill[src[i]] += 1
        adj[fill[dst[i]]] = 2 * i + 1
        fill[dst[i]] += 1
        to[2 * i] = dst[i]
        to[2 * i + 1] = src[i]
        capacity[2 * i] = cap[i]
        capacity[2 * i + 1] = 0

    cdef cnp.ndarray[cnp.int32_t, ndim=1] level = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] iter_idx = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] queue = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] path = np.empty(2 * m + 1, dtype=np.int32)

    cdef int64_t total = 0, pushed
    cdef int qh, qt, a, plen, advanced, j

    while True:
        for i in range(n):
            level[i] = -1
        level[s] = 0
        queue[0] = s
        qh = 0
        qt = 1
        while qh < qt:
            u = queue[qh]
            qh += 1
            for j in range(start[u], start[u + 1]):
                a = adj[j]
                v = to[a]
                if capacity[a] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue[qt] = v
                    qt += 1
        if level[t] < 0:
            break
        for i in range(n):
            iter_idx[i] = start[i]
        while True:
            plen = 0
            u = s
            pushed = 0
            while True:
                if u == t:
                    pushed = capacity[path[0]]
                    for j in range(1, plen):
                        if capacity[path[j]] < pushed:
                            pushed = capacity[path[j]]
                    for j in range(plen):
                        a = path[j]
                        capacity[a] -= pushed
                        capacity[a ^ 1] += pushed
                    break
                advanced = 0
                while iter_idx[u] < start[u + 1]:
                    a = adj[iter_idx[u]]
                    v = to[a]
                    if capacity[a] > 0 and level[v] == level[u] + 1:
                        path[plen] = a
                        plen += 1
                        u = v
                        advanced = 1
                        break
                    iter_idx[u] += 1
                if advanced:
                    continue
                level[u] = -1
                if plen == 0:
                    break
                plen -= 1
                a = path[plen]
                u = to[a ^ 1]
                iter_idx[u] += 1
            if pushed == 0:
                break
            total += pushed

    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen = np.zeros(n, dtype=np.uint8)
    seen[s] = 1
    queue[0] = s
    qh = 0
    qt = 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        for j in range(start[u], start[u + 1]):
            a = adj[j]
            v = to[a]
            if capacity[a] > 0 and not seen[v]:
                seen[v] = 1
                queue[qt] = v
                qt += 1

    flows = [int(cap[i] - capacity[2 * i]) for i in range(m)]
    reachable = {i for i in range(n) if seen[i]}
    return int(total), flows, reachable
