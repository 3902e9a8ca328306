"""Pure-Python reference versions of the hot kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when the
extension is unavailable or ``STMINCUT_PURE_PYTHON`` is set.
"""

from __future__ import annotations

from collections import deque

import numpy as np


def stoer_wagner(n, us, vs, ws):
    """Global minimum cut by maximum-adjacency phases on a dense matrix.

    Returns ``(value, shore)`` where ``shore`` is a boolean membership array of
    one minimizing side. Ties in the adjacency order go to the smaller index.
    """
    if n < 2:
        raise ValueError("global minimum cut needs at least two vertices")
    a = np.zeros((n, n), dtype=np.int64)
    np.add.at(a, (us, vs), ws)
    np.add.at(a, (vs, us), ws)
    owner = np.arange(n)
    alive = np.ones(n, dtype=bool)
    best = None
    best_shore = None
    for remaining in range(n, 1, -1):
        added = ~alive
        w = np.zeros(n, dtype=np.int64)
        prev = last = -1
        cut = 0
        for _ in range(remaining):
            sel = int(np.argmax(np.where(added, -1, w)))
            cut = int(w[sel])
            added[sel] = True
            prev, last = last, sel
            w += a[sel]
        if best is None or cut < best:
            best = cut
            best_shore = owner == last
        a[prev] += a[last]
        a[:, prev] += a[:, last]
        a[prev, prev] = 0
        a[last] = 0
        a[:, last] = 0
        alive[last] = False
        owner[owner == last] = prev
    return best, best_shore.copy()


def dinic(n, us, vs, caps, s, t):
    """Maximum s-t flow with level graphs and blocking flows.

    Each undirected edge ``i`` becomes two opposite arcs of capacity
    ``caps[i]``. Returns ``(value, net)`` with ``net[i]`` the signed flow from
    ``us[i]`` towards ``vs[i]``.
    """
    m = len(us)
    us = [int(x) for x in us]
    vs = [int(x) for x in vs]
    caps = [int(x) for x in caps]
    head: list[list[int]] = [[] for _ in range(n)]
    to = [0] * (2 * m)
    res = [0] * (2 * m)
    for i in range(m):
        u, v, c = us[i], vs[i], caps[i]
        to[2 * i] = v
        res[2 * i] = c
        head[u].append(2 * i)
        to[2 * i + 1] = u
        res[2 * i + 1] = c
        head[v].append(2 * i + 1)

    value = 0
    while True:
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for arc in head[v]:
                u = to[arc]
                if res[arc] > 0 and level[u] < 0:
                    level[u] = level[v] + 1
                    queue.append(u)
        if level[t] < 0:
            break
        it = [0] * n
        while True:
            pushed = _augment(s, t, head, to, res, level, it)
            if not pushed:
                break
            value += pushed

    net = np.array([caps[i] - res[2 * i] for i in range(m)], dtype=np.int64)
    return value, net


def _augment(s, t, head, to, res, level, it):
    stack = [s]
    path: list[int] = []
    while stack:
        v = stack[-1]
        if v == t:
            f = min(res[arc] for arc in path)
            for arc in path:
                res[arc] -= f
                res[arc ^ 1] += f
            return f
        adj = head[v]
        i = it[v]
        nxt = -1
        while i < len(adj):
            arc = adj[i]
            if res[arc] > 0 and level[to[arc]] == level[v] + 1:
                nxt = arc
                break
            i += 1
        it[v] = i
        if nxt < 0:
            level[v] = -1
            stack.pop()
            if path:
                path.pop()
                it[stack[-1]] += 1
            continue
        path.append(nxt)
        stack.append(to[nxt])
    return 0
