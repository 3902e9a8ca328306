"""Exact integral s-t maximum flow on undirected graphs and flow utilities."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from stmincut import kernels
from stmincut.graph import Edge, GraphError, WeightedGraph, canonical, cut_weight


class FlowContractError(RuntimeError):
    """A flow failed a postcondition it is required to satisfy."""


@dataclass(frozen=True)
class Flow:
    """Integral s-t flow.

    ``values[(u, v)]`` (``u < v``) is positive when the edge carries flow from
    ``u`` to ``v`` and negative for the opposite direction. Zero entries are
    omitted.
    """

    n: int
    s: int
    t: int
    value: int
    values: dict[Edge, int] = field(default_factory=dict)

    def total_weight(self) -> int:
        return sum(abs(f) for f in self.values.values())

    def along(self, u: int, v: int) -> int:
        """Flow from ``u`` to ``v`` (negative if it runs the other way)."""
        f = self.values.get(canonical(u, v), 0)
        return f if u < v else -f

    def net_out(self, v: int) -> int:
        out = 0
        for (a, b), f in self.values.items():
            if a == v:
                out += f
            elif b == v:
                out -= f
        return out


def zero_flow(n: int, s: int, t: int) -> Flow:
    return Flow(n, s, t, 0, {})


def max_flow(G: WeightedGraph, s: int, t: int, backend: str | None = None) -> Flow:
    """Maximum s-t flow via blocking flows on the level graph (deterministic)."""
    if s == t:
        raise GraphError("source and sink coincide")
    if not (0 <= s < G.n and 0 <= t < G.n):
        raise GraphError("terminal out of range")
    us, vs, ws = G.arrays()
    impl = kernels.get(backend) if backend else kernels
    value, net = impl.dinic(G.n, us, vs, ws, s, t)
    values = {(int(u), int(v)): int(f) for u, v, f in zip(us, vs, net) if f}
    F = Flow(G.n, s, t, int(value), values)
    check_flow(G, F)
    return F


def check_flow(G: WeightedGraph, F: Flow) -> None:
    """Assert capacity and conservation; raise :class:`FlowContractError` otherwise."""
    excess = [0] * G.n
    for (u, v), f in F.values.items():
        if abs(f) > G.weight(u, v):
            raise FlowContractError(f"flow {f} exceeds capacity on ({u}, {v})")
        excess[u] -= f
        excess[v] += f
    for v in range(G.n):
        want = -F.value if v == F.s else F.value if v == F.t else 0
        if excess[v] != want:
            raise FlowContractError(f"conservation fails at vertex {v}")


def make_noncircular(F: Flow) -> Flow:
    """Cancel directed cycles in the support of ``F`` until it is acyclic."""
    out: list[dict[int, int]] = [{} for _ in range(F.n)]
    for (u, v), f in F.values.items():
        if f > 0:
            out[u][v] = f
        elif f < 0:
            out[v][u] = -f
    while True:
        cycle = _find_cycle(out)
        if cycle is None:
            break
        delta = min(out[a][b] for a, b in cycle)
        for a, b in cycle:
            out[a][b] -= delta
            if not out[a][b]:
                del out[a][b]
    values: dict[Edge, int] = {}
    for u, nbrs in enumerate(out):
        for v, f in nbrs.items():
            values[canonical(u, v)] = f if u < v else -f
    return Flow(F.n, F.s, F.t, F.value, dict(sorted(values.items())))


def _find_cycle(out: list[dict[int, int]]) -> list[tuple[int, int]] | None:
    n = len(out)
    color = [0] * n  # 0 white, 1 on stack, 2 done
    for root in range(n):
        if color[root] or not out[root]:
            continue
        stack = [(root, iter(out[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[v] = 2
                stack.pop()
                continue
            if color[nxt] == 1:
                path = [x for x, _ in stack]
                i = path.index(nxt)
                cyc = path[i:] + [nxt]
                return list(zip(cyc, cyc[1:]))
            if color[nxt] == 0:
                color[nxt] = 1
                stack.append((nxt, iter(out[nxt])))
    return None


def is_noncircular(F: Flow) -> bool:
    out: list[dict[int, int]] = [{} for _ in range(F.n)]
    for (u, v), f in F.values.items():
        if f > 0:
            out[u][v] = f
        elif f < 0:
            out[v][u] = -f
    return _find_cycle(out) is None


def residual_reachable(G: WeightedGraph, F: Flow, s: int) -> frozenset[int]:
    seen = {s}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for u in G.neighbors(v):
            if u not in seen and G.weight(u, v) - F.along(v, u) > 0:
                seen.add(u)
                queue.append(u)
    return frozenset(seen)


def min_cut_shore_from_residual(G: WeightedGraph, F: Flow, s: int) -> frozenset[int]:
    """Shore of a minimum s-t cut: vertices reachable from ``s`` in the residual graph."""
    shore = residual_reachable(G, F, s)
    if F.t in shore:
        raise FlowContractError("sink reachable in residual graph; flow is not maximum")
    if cut_weight(G, shore) != F.value:
        raise FlowContractError("residual shore does not certify the flow value")
    return shore


@dataclass(frozen=True)
class FlowBoundCheck:
    total: int
    bound: float
    ratio: float
    ok: bool


def check_flow_weight_bound(F: Flow, n: int, W: int) -> FlowBoundCheck:
    """Compare the total flow weight with ``10 * n * sqrt(f * W)``.

    The comparison is done in exact integer arithmetic on the squares.
    """
    total = F.total_weight()
    ok = total * total <= 100 * n * n * F.value * W
    bound = 10 * n * math.sqrt(F.value * W)
    ratio = total / bound if bound else (0.0 if total == 0 else math.inf)
    return FlowBoundCheck(total, bound, ratio, ok)
