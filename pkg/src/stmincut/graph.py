"""Weighted undirected graphs and the structural operations built on them.

Vertices are dense ids ``0..n-1``. Edges are stored once per unordered pair,
keyed ``(u, v)`` with ``u < v``, and iterated in ascending lexicographic order.
Weights are positive integers; a pair with weight 0 is simply absent.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from stmincut.maxflow import Flow

INT64_MAX = 2**63 - 1

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs, shores and partitions."""


class FlowCapacityError(GraphError):
    pass


def canonical(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class WeightedGraph:
    """Undirected graph with positive integral edge weights.

    Instances are treated as immutable once built; every operation that
    changes weights returns a new graph.
    """

    __slots__ = ("n", "_w", "_adj", "_W", "_total", "_arrays")

    def __init__(self, n: int, weights: Mapping[Edge, int] | None = None):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        self.n = int(n)
        w: dict[Edge, int] = {}
        for (u, v), x in sorted((weights or {}).items()):
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u > v:
                raise GraphError(f"edge key ({u}, {v}) is not canonical")
            x = int(x)
            if x < 0:
                raise GraphError(f"negative weight on ({u}, {v})")
            if x:
                w[(u, v)] = x
        total = sum(w.values())
        if total > INT64_MAX:
            raise OverflowError("total edge weight exceeds the 64-bit range")
        self._w = w
        self._total = total
        self._W = max(w.values(), default=0)
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in w:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        self._adj = adj
        self._arrays = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int]]) -> WeightedGraph:
        """Build from ``(u, v, w)`` triples, summing weights of parallel edges."""
        acc: dict[Edge, int] = {}
        for u, v, x in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if x < 0:
                raise GraphError(f"negative weight on ({u}, {v})")
            key = canonical(u, v)
            acc[key] = acc.get(key, 0) + int(x)
        return cls(n, acc)

    # -- basic accessors -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._w)

    @property
    def W(self) -> int:
        """Maximum edge weight, 0 if edgeless."""
        return self._W

    @property
    def total_weight(self) -> int:
        return self._total

    def weight(self, u: int, v: int) -> int:
        if u == v:
            return 0
        return self._w.get(canonical(u, v), 0)

    def has_edge(self, u: int, v: int) -> bool:
        return self.weight(u, v) > 0

    def edges(self) -> list[tuple[int, int, int]]:
        return [(u, v, x) for (u, v), x in self._w.items()]

    def edge_weights(self) -> dict[Edge, int]:
        return dict(self._w)

    def neighbors(self, v: int) -> list[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def weighted_degree(self, v: int) -> int:
        return sum(self.weight(v, u) for u in self._adj[v])

    def weighted_degrees(self) -> np.ndarray:
        us, vs, ws = self.arrays()
        d = np.zeros(self.n, dtype=np.int64)
        np.add.at(d, us, ws)
        np.add.at(d, vs, ws)
        return d

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Edge endpoints and weights as int64 arrays, in canonical order."""
        if self._arrays is None:
            m = len(self._w)
            us = np.fromiter((e[0] for e in self._w), dtype=np.int64, count=m)
            vs = np.fromiter((e[1] for e in self._w), dtype=np.int64, count=m)
            ws = np.fromiter(self._w.values(), dtype=np.int64, count=m)
            self._arrays = (us, vs, ws)
        return self._arrays

    def induced(self, vertices: Iterable[int]) -> tuple[WeightedGraph, list[int]]:
        """Induced subgraph relabelled to ``0..k-1``; also returns the old ids."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        sub: dict[Edge, int] = {}
        for v in old:
            iv = index[v]
            for u in self._adj[v]:
                if u > v and u in index:
                    sub[(iv, index[u])] = self._w[(v, u)]
        return WeightedGraph(len(old), sub), old

    def without_edges(self, drop: Iterable[Edge]) -> WeightedGraph:
        removed = {canonical(*e) for e in drop}
        return WeightedGraph(self.n, {e: x for e, x in self._w.items() if e not in removed})

    def scaled(self, factor: int) -> WeightedGraph:
        return WeightedGraph(self.n, {e: x * factor for e, x in self._w.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and self._w == other._w

    def __hash__(self) -> int:
        return hash((self.n, tuple(self._w.items())))

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m}, W={self.W})"


class Partition:
    """Disjoint vertex blocks covering ``0..n-1``.

    Blocks are kept sorted internally and ordered by their smallest vertex so
    that block indices are reproducible.
    """

    __slots__ = ("n", "blocks", "block_of")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        ordered = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0] if b else -1)
        block_of = [-1] * n
        for i, b in enumerate(ordered):
            if not b:
                raise GraphError("empty block in partition")
            for v in b:
                if not 0 <= v < n:
                    raise GraphError(f"vertex {v} out of range for n={n}")
                if block_of[v] != -1:
                    raise GraphError(f"vertex {v} appears in two blocks")
                block_of[v] = i
        if -1 in block_of:
            raise GraphError(f"vertex {block_of.index(-1)} is not covered")
        self.n = n
        self.blocks: tuple[tuple[int, ...], ...] = tuple(ordered)
        self.block_of: tuple[int, ...] = tuple(block_of)

    @classmethod
    def from_labels(cls, labels: Iterable[int]) -> Partition:
        groups: dict[int, list[int]] = {}
        labels = list(labels)
        for v, lab in enumerate(labels):
            groups.setdefault(lab, []).append(v)
        return cls(len(labels), groups.values())

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(n, ([v] for v in range(n)))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __repr__(self) -> str:
        return f"Partition(n={self.n}, blocks={len(self.blocks)})"

    def expand(self, block_ids: Iterable[int]) -> frozenset[int]:
        """Union of the given blocks as an original-vertex set."""
        out: set[int] = set()
        for i in block_ids:
            out.update(self.blocks[i])
        return frozenset(out)


def check_shore(n: int, shore: Iterable[int]) -> frozenset[int]:
    x = frozenset(shore)
    if any(not 0 <= v < n for v in x):
        raise GraphError("shore contains a vertex out of range")
    if not x or len(x) == n:
        raise GraphError("trivial shore")
    return x


def cut_weight(G: WeightedGraph, shore: Iterable[int]) -> int:
    """Summed weight of the edges with exactly one endpoint in ``shore``."""
    x = check_shore(G.n, shore)
    total = 0
    for v in x:
        for u in G.neighbors(v):
            if u not in x:
                total += G.weight(u, v)
    return total


def connected_components(G: WeightedGraph) -> Partition:
    seen = [-1] * G.n
    blocks = []
    for root in range(G.n):
        if seen[root] != -1:
            continue
        seen[root] = len(blocks)
        comp = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in G.neighbors(v):
                if seen[u] == -1:
                    seen[u] = len(blocks)
                    comp.append(u)
                    queue.append(u)
        blocks.append(comp)
    return Partition(G.n, blocks)


def contract(G: WeightedGraph, P: Partition) -> WeightedGraph:
    """Merge each block of ``P`` into one vertex; block ``i`` becomes vertex ``i``."""
    if P.n != G.n:
        raise GraphError("partition and graph have different vertex counts")
    acc: dict[Edge, int] = {}
    bo = P.block_of
    for u, v, x in G.edges():
        a, b = bo[u], bo[v]
        if a != b:
            key = canonical(a, b)
            acc[key] = acc.get(key, 0) + x
    return WeightedGraph(len(P), acc)


def subtract_flow(H: WeightedGraph, F: Flow) -> WeightedGraph:
    """Residual-free weights ``w(e) - |F(e)|`` after removing a feasible flow."""
    w = H.edge_weights()
    for e, f in F.values.items():
        if f == 0:
            continue
        cap = w.get(e, 0)
        if abs(f) > cap:
            raise FlowCapacityError(f"flow exceeds capacity on edge {e}: |{f}| > {cap}")
        w[e] = cap - abs(f)
    return WeightedGraph(H.n, w)


def add_flow(H: WeightedGraph, F: Flow) -> WeightedGraph:
    """Inverse of :func:`subtract_flow`."""
    w = H.edge_weights()
    for e, f in F.values.items():
        if f:
            w[e] = w.get(e, 0) + abs(f)
    return WeightedGraph(H.n, w)
