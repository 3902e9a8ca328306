"""End-to-end s-t minimum cut: sparsify, max-flow, strong partition, contract, learn, max-flow.

All access to the input graph goes through a :class:`~stmincut.oracle.ListOracle`
or :class:`~stmincut.oracle.MatrixOracle`; the intermediate graphs (sparsifier,
residual, contracted graph) are explicit and handled classically.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from stmincut.graph import Edge, GraphError, Partition, WeightedGraph, canonical, subtract_flow
from stmincut.maxflow import (
    Flow,
    check_flow_weight_bound,
    make_noncircular,
    max_flow,
    min_cut_shore_from_residual,
)
from stmincut.oracle import (
    CostLedger,
    GraphOracle,
    charge,
    find_max_weight,
    grover_threshold_search,
    list_offsets,
    locate,
    read_graph,
)
from stmincut.sparsify import Sparsifier, SparsifyConfig, build_sparsifier
from stmincut.strength import strong_partition

EPS_CAP = 0.25


class PipelineError(RuntimeError):
    pass


class CutLearningError(RuntimeError):
    """The cut edges could not be learned within the ``n * W`` threshold."""


@dataclass(frozen=True)
class PipelineConfig:
    eps: float | None = None
    c_T: float = 64.0
    retries: int = 5
    c_rho: float = 32.0
    c_size: float = 64.0
    c_W: float = 64.0
    c_BK: float = 1.0
    c_DH: float = 1.0
    seed: int = 0
    learn_cut_edges: bool = False
    strength_backend: str = "exact"

    def __post_init__(self):
        if self.retries < 1:
            raise ValueError("retries must be at least 1")
        if self.eps is not None:
            select_epsilon(2, 1, self.eps)

    def sparsify_config(self) -> SparsifyConfig:
        return SparsifyConfig(self.c_rho, self.c_size, self.c_W, strength_backend=self.strength_backend)

    def to_dict(self) -> dict:
        return asdict(self)


def select_epsilon(n: int, W: int, override: float | None = None) -> float:
    """``min((n*W) ** (-1/3), 1/4)`` unless an override in ``(0, 1/3)`` is given."""
    if override is not None:
        if not 0 < override < 1 / 3:
            raise ValueError(f"epsilon override must lie in (0, 1/3), got {override}")
        return float(override)
    if n < 2 or W < 1:
        raise ValueError("epsilon rule needs n >= 2 and W >= 1")
    return min((n * W) ** (-1 / 3), EPS_CAP)


def strength_threshold(eps: float, n: int) -> int:
    return math.ceil(3 * eps * n)


def learning_threshold(eps: float, n: int, W: int, c_T: float) -> int:
    return math.ceil(c_T * eps * n * n * W)


def search_length(oracle: GraphOracle, m: int) -> int:
    return 2 * m if oracle.kind == "list" else oracle.n * oracle.n


@dataclass
class LearnedEdges:
    weights: dict[Edge, int]
    aborted: bool
    sound: bool
    threshold: int
    length: int
    ones: int


def _cross_search(oracle: GraphOracle, crossing, t_nominal: int, rng, ledger):
    """Threshold search over the list/matrix positions flagged by ``crossing(u, v)``.

    Returns the search result, the search length, and the deduplicated
    crossing edges with weights (read with extra classical queries).
    """
    before = oracle.total_queries
    if oracle.kind == "list":
        offsets = list_offsets(oracle)
        N = offsets[-1]

        def bit(j: int) -> int:
            v, i = locate(offsets, j)
            return int(crossing(v, oracle.neighbor(v, i)))
    else:
        N = oracle.n * oracle.n

        def bit(j: int) -> int:
            u, v = divmod(j, oracle.n)
            return int(u != v and oracle.entry(u, v) > 0 and crossing(u, v))

    if N == 0:
        return None, 0, {}
    t = min(t_nominal, N)
    res = grover_threshold_search(bit, N, t, rng, ledger=None)
    weights: dict[Edge, int] = {}
    if not res.aborted:
        if oracle.kind == "list":
            seen: dict[Edge, tuple[int, int]] = {}
            for j in res.positions:
                v, i = locate(offsets, j)
                e = canonical(v, oracle.neighbor(v, i))
                seen.setdefault(e, (v, i))
            for e, (v, i) in sorted(seen.items()):
                weights[e] = oracle.weight(v, i)
        else:
            pairs = sorted({canonical(*divmod(j, oracle.n)) for j in res.positions})
            for u, v in pairs:
                weights[(u, v)] = oracle.entry(u, v)
    if ledger is not None:
        charge(ledger, "grover", {"t": t, "N": N}, classical=oracle.total_queries - before)
    return res, N, weights


def learn_contracted_edges(
    oracle: GraphOracle,
    P: Partition,
    eps: float,
    W: int,
    c_T: float = 64.0,
    rng=None,
    ledger: CostLedger | None = None,
) -> LearnedEdges:
    """Learn every edge of the input graph whose endpoints lie in different blocks of ``P``.

    The search threshold is ``ceil(c_T * eps * n^2 * W)``, capped at the search
    length. Exceeding it aborts (or yields an unsound partial answer).
    """
    T = learning_threshold(eps, oracle.n, W, c_T)
    bo = P.block_of
    res, N, weights = _cross_search(oracle, lambda u, v: bo[u] != bo[v], T, rng, ledger)
    if res is None:
        return LearnedEdges({}, False, True, T, 0, 0)
    return LearnedEdges(weights, res.aborted, res.sound, min(T, N), N, len(res.positions))


def learn_cut_edges(oracle: GraphOracle, shore, W: int, rng=None, ledger: CostLedger | None = None) -> list[tuple[int, int, int]]:
    """Learn the edges crossing ``shore`` with threshold ``n * W``."""
    x = frozenset(shore)
    if not x or len(x) >= oracle.n:
        raise GraphError("trivial shore")
    # mark only the shore-side position of each cut edge so ones = cut edges
    res, N, weights = _cross_search(oracle, lambda u, v: u in x and v not in x, oracle.n * max(W, 1), rng, ledger)
    if res is None:
        return []
    if res.aborted or not res.sound:
        raise CutLearningError("more cut edges than the n*W threshold allows")
    return [(u, v, w) for (u, v), w in weights.items()]


@dataclass
class StageStats:
    n: int = 0
    W: int = 0
    eps: float = 0.0
    k: int = 0
    T: int = 0
    N: int = 0
    early_exit: bool = False
    attempts: int = 0
    aborts: int = 0
    unsound: int = 0
    sanity_failures: int = 0
    H_edges: int = 0
    H_max_weight: int = 0
    sparsifier_sampled: bool = False
    lambda_H: int = 0
    blocks: int = 0
    contracted_edges: int = 0
    learned_edges: int = 0
    cross_weight_sum: int = 0
    weight_upper_ratio: float = 0.0
    flow_bound_ratios: list[float] = field(default_factory=list)
    flow_bound_violations: int = 0
    wall_time: dict[str, float] = field(default_factory=dict)


@dataclass
class PipelineResult:
    lam: int
    shore: frozenset[int]
    ledger: CostLedger
    stats: StageStats
    cut_edges: list[tuple[int, int, int]] | None = None
    partition: Partition | None = None
    sparsifier: Sparsifier | None = None
    contracted: WeightedGraph | None = None


def _record_flow(stats: StageStats, F: Flow, n: int, W: int) -> None:
    chk = check_flow_weight_bound(F, n, W)
    stats.flow_bound_ratios.append(chk.ratio)
    if not chk.ok:
        stats.flow_bound_violations += 1


def _tick(stats: StageStats, name: str, start: float) -> float:
    now = time.perf_counter()
    stats.wall_time[name] = stats.wall_time.get(name, 0.0) + now - start
    return now


def st_min_cut(oracle: GraphOracle, s: int, t: int, config: PipelineConfig = PipelineConfig()) -> PipelineResult:
    """Minimum s-t cut value and shore of the graph behind ``oracle``."""
    n = oracle.n
    if s == t:
        raise GraphError("source and sink coincide")
    if not (0 <= s < n and 0 <= t < n):
        raise GraphError("terminal out of range")
    ledger = CostLedger()
    stats = StageStats(n=n)
    clock = time.perf_counter()

    W = find_max_weight(oracle, ledger, config.c_DH)
    stats.W = W
    clock = _tick(stats, "max_weight", clock)
    rng = np.random.default_rng(config.seed)

    if W == 0:
        return PipelineResult(0, frozenset([s]), ledger, stats, [] if config.learn_cut_edges else None)

    if oracle.kind == "matrix" and W * W >= n:
        before = oracle.total_queries
        G = read_graph(oracle)
        charge(ledger, "classical-read", {"n": n}, classical=oracle.total_queries - before)
        F = make_noncircular(max_flow(G, s, t))
        _record_flow(stats, F, n, W)
        shore = min_cut_shore_from_residual(G, F, s)
        stats.early_exit = True
        stats.attempts = 1
        _tick(stats, "max_flow", clock)
        cut = None
        if config.learn_cut_edges:
            cut = [(u, v, x) for u, v, x in G.edges() if (u in shore) != (v in shore)]
        return PipelineResult(F.value, shore, ledger, stats, cut)

    eps = select_epsilon(n, W, config.eps)
    stats.eps = eps
    stats.k = k = strength_threshold(eps, n)
    T = learning_threshold(eps, n, W, config.c_T)

    for attempt in range(1, config.retries + 1):
        stats.attempts = attempt
        sp = build_sparsifier(oracle, eps, rng, config.sparsify_config(), ledger)
        H = sp.H
        stats.H_edges, stats.H_max_weight, stats.sparsifier_sampled = H.m, H.W, sp.sampled
        clock = _tick(stats, "sparsify", clock)

        F = make_noncircular(max_flow(H, s, t))
        _record_flow(stats, F, n, max(H.W, 1))
        stats.lambda_H = F.value
        H_res = subtract_flow(H, F)
        clock = _tick(stats, "max_flow_H", clock)

        sp_part = strong_partition(H_res, k, c_bk=config.c_BK)
        P = sp_part.partition
        stats.blocks = len(P)
        clock = _tick(stats, "strong_partition", clock)

        learned = learn_contracted_edges(oracle, P, eps, W, config.c_T, rng, ledger)
        stats.T, stats.N = learned.threshold, learned.length
        clock = _tick(stats, "learn_edges", clock)
        if learned.aborted:
            stats.aborts += 1
            continue
        if not learned.sound:
            stats.unsound += 1
            continue

        bo = P.block_of
        acc: dict[Edge, int] = {}
        for (u, v), x in learned.weights.items():
            key = canonical(bo[u], bo[v])
            acc[key] = acc.get(key, 0) + x
        G2 = WeightedGraph(len(P), acc)
        stats.learned_edges = len(learned.weights)
        stats.contracted_edges = G2.m
        stats.cross_weight_sum = 2 * G2.total_weight
        stats.weight_upper_ratio = G2.m / (eps * n * n * W)
        a, b = bo[s], bo[t]
        if a == b:
            raise PipelineError("source and sink share a block; the H-flow was not maximum")

        F2 = make_noncircular(max_flow(G2, a, b))
        _record_flow(stats, F2, G2.n, max(G2.W, 1))
        shore2 = min_cut_shore_from_residual(G2, F2, a)
        lam = F2.value
        shore = P.expand(shore2)
        clock = _tick(stats, "max_flow_contracted", clock)

        tol = 1e-9 * max(1, stats.lambda_H)
        if lam * (1 + eps) < stats.lambda_H - tol or lam * (1 - eps) > stats.lambda_H + tol:
            stats.sanity_failures += 1
            continue

        cut = None
        if config.learn_cut_edges:
            cut = learn_cut_edges(oracle, shore, W, rng, ledger)
            _tick(stats, "learn_cut_edges", clock)
        return PipelineResult(lam, shore, ledger, stats, cut, P, sp, G2)

    raise PipelineError(f"pipeline failed after {config.retries} attempts")


def modeled_total_closed_form(
    kind: str, n: int, m: int, W: int, config: PipelineConfig, attempts: int, early_exit: bool = False, cut_edges: bool = False
) -> int:
    """Expected ledger total for a solve run, from instance sizes alone.

    ``attempts`` is the number of sparsify/learn rounds the run performed.
    """
    N = 2 * m if kind == "list" else n * n
    total = 0
    if N > 0:
        total += math.ceil(config.c_DH * math.sqrt(N))
    if W == 0 or early_exit:
        return total
    eps = select_epsilon(n, W, config.eps)
    if kind == "list":
        sparsify = math.ceil(math.sqrt(m * n) / eps)
    else:
        sparsify = math.ceil(n**1.5 / eps)
    t = min(learning_threshold(eps, n, W, config.c_T), N)
    grover = math.ceil(math.sqrt(t * N) - 1e-12) * max(1, math.ceil(math.log2(N)))
    total += attempts * (sparsify + grover)
    if cut_edges:
        tc = min(n * W, N)
        total += math.ceil(math.sqrt(tc * N) - 1e-12) * max(1, math.ceil(math.log2(N)))
    return total
