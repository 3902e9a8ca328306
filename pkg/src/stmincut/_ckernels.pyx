# cython: language_level=3
"""Compiled versions of the hot kernels; see ``_pykernels`` for the reference code."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


def stoer_wagner(Py_ssize_t n, us, vs, ws):
    if n < 2:
        raise ValueError("global minimum cut needs at least two vertices")
    cdef int64_t[:, ::1] a = np.zeros((n, n), dtype=np.int64)
    cdef const int64_t[:] eu = np.ascontiguousarray(us, dtype=np.int64)
    cdef const int64_t[:] ev = np.ascontiguousarray(vs, dtype=np.int64)
    cdef const int64_t[:] ew = np.ascontiguousarray(ws, dtype=np.int64)
    cdef Py_ssize_t i, j, k, step, remaining, sel, prev, last
    for i in range(eu.shape[0]):
        a[eu[i], ev[i]] += ew[i]
        a[ev[i], eu[i]] += ew[i]

    cdef int64_t[::1] owner = np.arange(n, dtype=np.int64)
    cdef char[::1] alive = np.ones(n, dtype=np.int8)
    cdef char[::1] added = np.zeros(n, dtype=np.int8)
    cdef int64_t[::1] w = np.zeros(n, dtype=np.int64)
    best_shore = np.zeros(n, dtype=bool)
    cdef cnp.npy_bool[::1] bs = best_shore
    cdef int64_t best = -1, cut = 0, top

    for remaining in range(n, 1, -1):
        for i in range(n):
            added[i] = 0 if alive[i] else 1
            w[i] = 0
        prev = -1
        last = -1
        for step in range(remaining):
            sel = -1
            top = -1
            for i in range(n):
                if not added[i] and w[i] > top:
                    top = w[i]
                    sel = i
            cut = top
            added[sel] = 1
            prev = last
            last = sel
            for i in range(n):
                w[i] += a[sel, i]
        if best < 0 or cut < best:
            best = cut
            for i in range(n):
                bs[i] = owner[i] == last
        for i in range(n):
            a[prev, i] += a[last, i]
            a[i, prev] += a[i, last]
        a[prev, prev] = 0
        for i in range(n):
            a[last, i] = 0
            a[i, last] = 0
        alive[last] = 0
        for i in range(n):
            if owner[i] == last:
                owner[i] = prev
    return int(best), best_shore


def dinic(Py_ssize_t n, us, vs, caps, Py_ssize_t s, Py_ssize_t t):
    cdef const int64_t[:] eu = np.ascontiguousarray(us, dtype=np.int64)
    cdef const int64_t[:] ev = np.ascontiguousarray(vs, dtype=np.int64)
    cdef const int64_t[:] ec = np.ascontiguousarray(caps, dtype=np.int64)
    cdef Py_ssize_t m = eu.shape[0]
    cdef Py_ssize_t i, v, u, arc, qh, qt, sp, nxt
    # CSR of arcs grouped by tail, in edge order
    cdef int64_t[::1] start = np.zeros(n + 1, dtype=np.int64)
    for i in range(m):
        start[eu[i] + 1] += 1
        start[ev[i] + 1] += 1
    for i in range(n):
        start[i + 1] += start[i]
    cdef int64_t[::1] fill = np.array(start[:n], dtype=np.int64)
    cdef int64_t[::1] arcs = np.empty(2 * m, dtype=np.int64)
    cdef int64_t[::1] to = np.empty(2 * m, dtype=np.int64)
    cdef int64_t[::1] res = np.empty(2 * m, dtype=np.int64)
    for i in range(m):
        to[2 * i] = ev[i]
        res[2 * i] = ec[i]
        arcs[fill[eu[i]]] = 2 * i
        fill[eu[i]] += 1
        to[2 * i + 1] = eu[i]
        res[2 * i + 1] = ec[i]
        arcs[fill[ev[i]]] = 2 * i + 1
        fill[ev[i]] += 1

    cdef int64_t[::1] level = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] queue = np.empty(max(n, 1), dtype=np.int64)
    cdef int64_t[::1] it = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] stack = np.empty(n + 1, dtype=np.int64)
    cdef int64_t[::1] path = np.empty(n + 1, dtype=np.int64)
    cdef int64_t value = 0, f
    cdef bint found

    while True:
        for i in range(n):
            level[i] = -1
        level[s] = 0
        qh = 0
        qt = 0
        queue[qt] = s
        qt += 1
        while qh < qt:
            v = queue[qh]
            qh += 1
            for i in range(start[v], start[v + 1]):
                arc = arcs[i]
                u = to[arc]
                if res[arc] > 0 and level[u] < 0:
                    level[u] = level[v] + 1
                    queue[qt] = u
                    qt += 1
        if level[t] < 0:
            break
        for i in range(n):
            it[i] = start[i]
        while True:
            # one augmenting path in the level graph
            sp = 0
            stack[0] = s
            f = 0
            while sp >= 0:
                v = stack[sp]
                if v == t:
                    f = res[path[0]]
                    for i in range(sp):
                        if res[path[i]] < f:
                            f = res[path[i]]
                    for i in range(sp):
                        res[path[i]] -= f
                        res[path[i] ^ 1] += f
                    break
                found = False
                while it[v] < start[v + 1]:
                    arc = arcs[it[v]]
                    if res[arc] > 0 and level[to[arc]] == level[v] + 1:
                        found = True
                        break
                    it[v] += 1
                if not found:
                    level[v] = -1
                    sp -= 1
                    if sp >= 0:
                        it[stack[sp]] += 1
                    continue
                path[sp] = arc
                sp += 1
                stack[sp] = to[arc]
            if f == 0:
                break
            value += f

    net = np.empty(m, dtype=np.int64)
    cdef int64_t[::1] nv = net
    for i in range(m):
        nv[i] = ec[i] - res[2 * i]
    return int(value), net
