"""Query access to graphs and classical stand-ins for the quantum primitives.

Oracles are the only way pipeline code reads the input graph; every query
bumps exactly one counter. The quantum routines (threshold search, maximum
finding) are simulated by classical scans that return exact answers, while
their modeled quantum query cost is charged to a :class:`CostLedger`.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from collections import Counter
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from stmincut.graph import GraphError, WeightedGraph

ABORT_PROBABILITY = 0.9
PRIMITIVES = ("grover", "min-find", "sparsify-list", "sparsify-matrix", "classical-read")


class ListOracle:
    """Adjacency-list access: degrees, i-th neighbors and i-th edge weights.

    Neighbor indices are 1-based. ``order`` optionally pins each vertex's
    neighbor list (a permutation of its neighbors); the default is ascending.
    """

    kind = "list"

    def __init__(self, G: WeightedGraph, order: Sequence[Sequence[int]] | None = None, audit: bool = False):
        self._graph = G
        if order is None:
            self._order = [list(G.neighbors(v)) for v in range(G.n)]
        else:
            self._order = [list(lst) for lst in order]
            for v, lst in enumerate(self._order):
                if sorted(lst) != G.neighbors(v):
                    raise GraphError(f"neighbor order for vertex {v} is not a permutation of its neighbors")
        self.n = G.n
        self.counters = Counter({"degree": 0, "neighbor": 0, "weight": 0})
        self.audit = audit
        self.calls: list[tuple[str, int, int]] = []

    def _tick(self, kind: str, v: int, i: int = 0) -> None:
        self.counters[kind] += 1
        if self.audit:
            self.calls.append((kind, v, i))

    def degree(self, v: int) -> int:
        self._tick("degree", v)
        return len(self._order[v])

    def neighbor(self, v: int, i: int) -> int:
        self._tick("neighbor", v, i)
        if not 1 <= i <= len(self._order[v]):
            raise IndexError(f"vertex {v} has no neighbor number {i}")
        return self._order[v][i - 1]

    def weight(self, v: int, i: int) -> int:
        self._tick("weight", v, i)
        if not 1 <= i <= len(self._order[v]):
            raise IndexError(f"vertex {v} has no neighbor number {i}")
        return self._graph.weight(v, self._order[v][i - 1])

    @property
    def total_queries(self) -> int:
        return sum(self.counters.values())


class MatrixOracle:
    """Adjacency-matrix access: ``entry(u, v)`` is the weight of ``{u, v}`` (0 if absent)."""

    kind = "matrix"

    def __init__(self, G: WeightedGraph, audit: bool = False):
        self._graph = G
        self.n = G.n
        self.counters = Counter({"entry": 0})
        self.audit = audit
        self.calls: list[tuple[str, int, int]] = []

    def entry(self, u: int, v: int) -> int:
        self.counters["entry"] += 1
        if self.audit:
            self.calls.append(("entry", u, v))
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise IndexError(f"matrix entry ({u}, {v}) out of range")
        return self._graph.weight(u, v)

    @property
    def total_queries(self) -> int:
        return sum(self.counters.values())


GraphOracle = ListOracle | MatrixOracle


def make_oracle(G: WeightedGraph, kind: str = "list", order=None, audit: bool = False) -> GraphOracle:
    if kind == "list":
        return ListOracle(G, order=order, audit=audit)
    if kind == "matrix":
        return MatrixOracle(G, audit=audit)
    raise ValueError(f"unknown oracle kind {kind!r}")


# -- cost model -------------------------------------------------------------


def ceil_log2(N: int) -> int:
    """``ceil(log2 N)``, with the value for ``N = 1`` taken as 1."""
    if N < 1:
        raise ValueError("log of non-positive size")
    return max(1, (N - 1).bit_length())


def ceil_sqrt(x: int) -> int:
    r = math.isqrt(x)
    return r if r * r == x else r + 1


def grover_cost(t: int, N: int) -> int:
    return ceil_sqrt(t * N) * ceil_log2(N)


def modeled_cost(primitive: str, params: dict) -> int:
    """Closed-form modeled quantum query count for one primitive invocation."""
    if primitive == "grover":
        return grover_cost(params["t"], params["N"])
    if primitive == "min-find":
        return math.ceil(params.get("c_dh", 1.0) * math.sqrt(params["N"]))
    if primitive == "sparsify-list":
        return math.ceil(math.sqrt(params["m"] * params["n"]) / params["eps"])
    if primitive == "sparsify-matrix":
        return math.ceil(params["n"] ** 1.5 / params["eps"])
    if primitive == "classical-read":
        return 0
    raise ValueError(f"unknown primitive {primitive!r}")


def _log_factor(primitive: str, params: dict) -> int:
    if primitive in ("grover", "min-find"):
        return ceil_log2(max(params["N"], 1))
    if primitive.startswith("sparsify"):
        return ceil_log2(max(params["n"], 1))
    return 1


@dataclass
class LedgerEntry:
    primitive: str
    params: dict
    modeled: int
    classical: int = 0
    log_factor: int = 1


@dataclass
class CostLedger:
    entries: list[LedgerEntry] = field(default_factory=list)

    @property
    def modeled_total(self) -> int:
        return sum(e.modeled for e in self.entries)

    @property
    def classical_total(self) -> int:
        return sum(e.classical for e in self.entries)

    def modeled_by_primitive(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for e in self.entries:
            out[e.primitive] = out.get(e.primitive, 0) + e.modeled
        return out

    def to_dict(self) -> dict:
        return {
            "entries": [
                {
                    "primitive": e.primitive,
                    "params": e.params,
                    "modeled": e.modeled,
                    "classical": e.classical,
                    "log_factor": e.log_factor,
                }
                for e in self.entries
            ],
            "modeled_total": self.modeled_total,
            "classical_total": self.classical_total,
            "modeled_by_primitive": self.modeled_by_primitive(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> CostLedger:
        return cls([LedgerEntry(**e) for e in d["entries"]])


def charge(ledger: CostLedger, primitive: str, params: dict, classical: int = 0) -> CostLedger:
    """Append one entry with the closed-form modeled cost of ``primitive``."""
    if primitive not in PRIMITIVES:
        raise ValueError(f"unknown primitive {primitive!r}")
    ledger.entries.append(
        LedgerEntry(primitive, dict(params), modeled_cost(primitive, params), classical, _log_factor(primitive, params))
    )
    return ledger


# -- simulated quantum primitives ------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    positions: tuple[int, ...]
    aborted: bool
    sound: bool
    classical_queries: int
    modeled_cost: int


def grover_threshold_search(
    bit: Callable[[int], int],
    N: int,
    t: int,
    rng: np.random.Generator | int | None = None,
    ledger: CostLedger | None = None,
) -> SearchResult:
    """Find every 1 in a length-``N`` bit string if there are at most ``t`` of them.

    With more than ``t`` ones the search aborts with probability exactly 9/10;
    otherwise it returns the first ``t + 1`` ones found with ``sound=False``.
    """
    if not 1 <= t <= N:
        raise ValueError(f"threshold must satisfy 1 <= t <= N (t={t}, N={N})")
    rng = np.random.default_rng(rng)
    found: list[int] = []
    queries = 0
    for i in range(N):
        queries += 1
        if bit(i):
            found.append(i)
            if len(found) > t:
                break
    cost = grover_cost(t, N)
    if ledger is not None:
        charge(ledger, "grover", {"t": t, "N": N}, classical=queries)
    if len(found) <= t:
        return SearchResult(tuple(found), False, True, queries, cost)
    if rng.random() < ABORT_PROBABILITY:
        return SearchResult((), True, True, queries, cost)
    return SearchResult(tuple(found), False, False, queries, cost)


def list_offsets(oracle: ListOracle) -> list[int]:
    """Prefix sums of degrees; position ``j`` of the concatenated lists lies in
    vertex ``v``'s list when ``offsets[v] <= j < offsets[v + 1]``."""
    offsets = [0]
    for v in range(oracle.n):
        offsets.append(offsets[-1] + oracle.degree(v))
    return offsets


def locate(offsets: list[int], j: int) -> tuple[int, int]:
    """Vertex and 1-based neighbor index of concatenated position ``j``."""
    v = bisect_right(offsets, j) - 1
    return v, j - offsets[v] + 1


def find_max_weight(oracle: GraphOracle, ledger: CostLedger | None = None, c_dh: float = 1.0) -> int:
    """Largest edge weight (0 if edgeless), charged as a minimum-finding call."""
    before = oracle.total_queries
    best = 0
    if oracle.kind == "list":
        offsets = list_offsets(oracle)
        N = offsets[-1]
        for v in range(oracle.n):
            for i in range(1, offsets[v + 1] - offsets[v] + 1):
                best = max(best, oracle.weight(v, i))
    else:
        N = oracle.n * oracle.n
        for u in range(oracle.n):
            for v in range(u + 1, oracle.n):
                best = max(best, oracle.entry(u, v))
    if ledger is not None:
        charge(ledger, "min-find", {"N": N, "c_dh": c_dh}, classical=oracle.total_queries - before)
    return best


def read_graph(oracle: GraphOracle) -> WeightedGraph:
    """Read the whole graph through the oracle (every query is counted)."""
    weights: dict[tuple[int, int], int] = {}
    if oracle.kind == "list":
        for v in range(oracle.n):
            for i in range(1, oracle.degree(v) + 1):
                u = oracle.neighbor(v, i)
                if v < u:
                    weights[(v, u)] = oracle.weight(v, i)
    else:
        for u in range(oracle.n):
            for v in range(u + 1, oracle.n):
                x = oracle.entry(u, v)
                if x:
                    weights[(u, v)] = x
    return WeightedGraph(oracle.n, weights)
