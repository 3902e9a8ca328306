"""Cut sparsifiers by strength-proportional sampling with power-of-two weights."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from stmincut.graph import Edge, GraphError, WeightedGraph
from stmincut.oracle import CostLedger, GraphOracle, charge, read_graph
from stmincut.strength import estimate_strengths

VERIFY_MAX_N = 14


class SparsifierError(RuntimeError):
    pass


@dataclass(frozen=True)
class SparsifyConfig:
    c_rho: float = 32.0
    c_size: float = 64.0
    c_W: float = 64.0
    max_attempts: int = 5
    strength_backend: str = "exact"


@dataclass(frozen=True)
class Sparsifier:
    H: WeightedGraph
    eps: float
    exponents: dict[Edge, int]
    rho: float
    size_bound: float
    weight_bound: float
    attempts: int
    sampled: bool


def check_epsilon(eps: float) -> None:
    if not 0 < eps < 1 / 3:
        raise ValueError(f"epsilon must lie in (0, 1/3), got {eps}")


def sampling_exponent(q: float) -> int:
    """Smallest ``j >= 0`` with ``2**-j <= min(1, q)``."""
    if q <= 0:
        raise ValueError("sampling ratio must be positive")
    j = 0
    while q * (1 << j) < 1:
        j += 1
    return j


def size_bound(n: int, eps: float, c_size: float) -> float:
    return c_size * n * math.log(n) ** 2 / eps**2


def weight_bound(n: int, eps: float, W: int, c_W: float) -> float:
    return c_W * eps**2 * n * math.log(n) * W


def sparsify_graph(
    G: WeightedGraph,
    eps: float,
    rng: np.random.Generator | int | None = None,
    config: SparsifyConfig = SparsifyConfig(),
) -> Sparsifier:
    """Sample edge ``e`` with probability ``2**-j_e`` and scale kept weights by ``2**j_e``.

    ``2**-j_e`` is the largest power of two not above ``min(1, rho*w(e)/k(e))``
    where ``k(e)`` is the strength estimate and ``rho = c_rho * ln(n) / eps**2``.
    Draws violating the size or maximum-weight bound are redrawn, up to
    ``config.max_attempts`` times.
    """
    check_epsilon(eps)
    if G.m == 0:
        raise GraphError("cannot sparsify an edgeless graph")
    n = G.n
    rng = np.random.default_rng(rng)
    rho = config.c_rho * math.log(n) / eps**2
    deg = G.weighted_degrees()
    edges = G.edges()

    # strength never exceeds the smaller endpoint degree, so edges passing
    # this test keep probability 1 whatever the exact strength is
    if all(rho * x >= min(deg[u], deg[v]) for u, v, x in edges):
        exps = {(u, v): 0 for u, v, _ in edges}
        sampled = False
    else:
        k = estimate_strengths(G, config.strength_backend).values
        exps = {(u, v): sampling_exponent(rho * x / k[(u, v)]) for u, v, x in edges}
        sampled = any(exps.values())

    sbound = size_bound(n, eps, config.c_size)
    wbound = weight_bound(n, eps, G.W, config.c_W)
    for attempt in range(1, config.max_attempts + 1):
        kept: dict[Edge, int] = {}
        kept_exps: dict[Edge, int] = {}
        draws = rng.random(len(edges))
        for (u, v, x), r in zip(edges, draws):
            j = exps[(u, v)]
            if r < 2.0**-j:
                kept[(u, v)] = x << j
                kept_exps[(u, v)] = j
        H = WeightedGraph(n, kept)
        if H.m <= sbound and H.W <= wbound:
            return Sparsifier(H, eps, kept_exps, rho, sbound, wbound, attempt, sampled)
    raise SparsifierError(f"no draw met the size/weight bounds in {config.max_attempts} attempts")


def build_sparsifier(
    oracle: GraphOracle,
    eps: float,
    rng: np.random.Generator | int | None = None,
    config: SparsifyConfig = SparsifyConfig(),
    ledger: CostLedger | None = None,
) -> Sparsifier:
    """Sparsify the graph behind ``oracle``, charging the modeled quantum cost.

    The classical simulation reads every edge through the oracle; those reads
    are recorded as the entry's classical query count.
    """
    check_epsilon(eps)
    before = oracle.total_queries
    G = read_graph(oracle)
    if G.m == 0:
        raise GraphError("cannot sparsify an edgeless graph")
    if ledger is not None:
        classical = oracle.total_queries - before
        if oracle.kind == "list":
            charge(ledger, "sparsify-list", {"m": G.m, "n": G.n, "eps": eps}, classical=classical)
        else:
            charge(ledger, "sparsify-matrix", {"n": G.n, "eps": eps}, classical=classical)
    return sparsify_graph(G, eps, rng, config)


@dataclass(frozen=True)
class SparsifierCheck:
    ok: bool
    worst_ratio: float
    witness: frozenset[int] | None


def verify_sparsifier(G: WeightedGraph, H: WeightedGraph, eps: float) -> SparsifierCheck:
    """Check ``(1-eps) w_G(cut) <= w_H(cut) <= (1+eps) w_G(cut)`` on every cut.

    The worst ratio is the one farthest from 1; its shore is the witness.
    """
    if G.n != H.n:
        raise GraphError("graphs have different vertex sets")
    n = G.n
    if n > VERIFY_MAX_N:
        raise GraphError("instance exceeds oracle bound")
    if n < 2:
        return SparsifierCheck(True, 1.0, None)
    gu, gv, gw = G.arrays()
    hu, hv, hw = H.arrays()
    masks = np.arange(1, 1 << (n - 1), dtype=np.int64)
    bits = np.arange(n - 1, dtype=np.int64)
    member = np.zeros((len(masks), n), dtype=bool)
    member[:, : n - 1] = ((masks[:, None] >> bits[None, :]) & 1).astype(bool)
    cg = (member[:, gu] ^ member[:, gv]).astype(np.int64) @ gw
    ch = (member[:, hu] ^ member[:, hv]).astype(np.int64) @ hw
    bad = (ch < (1 - eps) * cg) | (ch > (1 + eps) * cg)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(cg > 0, ch / np.where(cg > 0, cg, 1), np.where(ch > 0, np.inf, 1.0))
    dev = np.abs(ratio - 1.0)
    worst = int(np.argmax(dev))
    witness = frozenset(np.flatnonzero(member[worst]).tolist())
    if not bad.any():
        return SparsifierCheck(True, float(ratio[worst]), witness)
    worst = int(np.flatnonzero(bad)[np.argmax(dev[bad])])
    return SparsifierCheck(False, float(ratio[worst]), frozenset(np.flatnonzero(member[worst]).tolist()))
