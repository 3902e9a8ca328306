"""Exact oracles for small instances: brute-force cuts and exact edge strengths.

These are correctness references, not fast algorithms. Enumeration sizes are
guarded so a mistaken call fails loudly instead of running for hours.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from stmincut import kernels
from stmincut.graph import Edge, GraphError, WeightedGraph, connected_components

BRUTE_ST_MAX_N = 20
ENUMERATE_ST_MAX_N = 16
BRUTE_GLOBAL_MAX_N = 16
DEFINITIONAL_STRENGTH_MAX_N = 8
EXACT_STRENGTH_MAX_N = 2000

_CHUNK = 1 << 12


class OracleBoundError(GraphError):
    """Instance is larger than the enumeration guard allows."""


@dataclass(frozen=True)
class MinCutCertificate:
    value: int
    shore: frozenset[int]


def _check_terminals(G: WeightedGraph, s: int, t: int, limit: int) -> None:
    if s == t:
        raise GraphError("source and sink coincide")
    if not (0 <= s < G.n and 0 <= t < G.n):
        raise GraphError("terminal out of range")
    if G.n > limit:
        raise OracleBoundError("instance exceeds oracle bound")


def _st_cut_table(G: WeightedGraph, s: int, t: int):
    """Yield ``(membership, weights)`` chunks over every shore with s in, t out."""
    free = [v for v in range(G.n) if v not in (s, t)]
    k = len(free)
    us, vs, ws = G.arrays()
    bits = np.arange(k, dtype=np.int64)
    for lo in range(0, 1 << k, _CHUNK):
        masks = np.arange(lo, min(lo + _CHUNK, 1 << k), dtype=np.int64)
        member = np.zeros((len(masks), G.n), dtype=bool)
        member[:, s] = True
        if k:
            member[:, free] = ((masks[:, None] >> bits[None, :]) & 1).astype(bool)
        cross = member[:, us] ^ member[:, vs]
        yield member, cross.astype(np.int64) @ ws


def _lex_key(member_row: np.ndarray) -> tuple[int, ...]:
    return tuple(np.flatnonzero(member_row).tolist())


def brute_force_min_st_cut(G: WeightedGraph, s: int, t: int) -> MinCutCertificate:
    """Exact minimum s-t cut by enumerating all ``2**(n-2)`` shores.

    Among minimizing shores the lexicographically smallest sorted vertex list
    is returned.
    """
    _check_terminals(G, s, t, BRUTE_ST_MAX_N)
    best = None
    best_key = None
    for member, weights in _st_cut_table(G, s, t):
        low = int(weights.min())
        if best is not None and low > best:
            continue
        rows = np.flatnonzero(weights == low)
        key = min(_lex_key(member[r]) for r in rows)
        if best is None or low < best or key < best_key:
            best, best_key = low, key
    return MinCutCertificate(best, frozenset(best_key))


def enumerate_min_st_cuts(G: WeightedGraph, s: int, t: int) -> list[frozenset[int]]:
    """All minimum s-t cut shores (containing ``s``), in lexicographic order."""
    _check_terminals(G, s, t, ENUMERATE_ST_MAX_N)
    best = None
    keys: list[tuple[int, ...]] = []
    for member, weights in _st_cut_table(G, s, t):
        low = int(weights.min())
        if best is not None and low > best:
            continue
        found = [_lex_key(member[r]) for r in np.flatnonzero(weights == low)]
        if best is None or low < best:
            best, keys = low, found
        else:
            keys.extend(found)
    return [frozenset(k) for k in sorted(keys)]


def global_min_cut_with_shore(G: WeightedGraph) -> tuple[int, frozenset[int]]:
    """Global minimum cut value and a minimizing shore.

    The shore reported is the side containing vertex 0 (the lexicographically
    smaller of the two sides of the cut found).
    """
    if G.n < 2:
        raise GraphError("global minimum cut needs at least two vertices")
    us, vs, ws = G.arrays()
    value, member = kernels.stoer_wagner(G.n, us, vs, ws)
    if not member[0]:
        member = ~member
    return int(value), frozenset(np.flatnonzero(member).tolist())


def global_min_cut(G: WeightedGraph) -> int:
    return global_min_cut_with_shore(G)[0]


def brute_force_global_min_cut(G: WeightedGraph) -> int:
    """Minimum cut over all non-trivial shores, by enumeration (independent of Stoer-Wagner)."""
    if G.n < 2:
        raise GraphError("global minimum cut needs at least two vertices")
    if G.n > BRUTE_GLOBAL_MAX_N:
        raise OracleBoundError("instance exceeds oracle bound")
    n = G.n
    us, vs, ws = G.arrays()
    bits = np.arange(n - 1, dtype=np.int64)
    best = None
    # vertex n-1 always outside; mask 0 (empty shore) skipped
    for lo in range(1, 1 << (n - 1), _CHUNK):
        masks = np.arange(lo, min(lo + _CHUNK, 1 << (n - 1)), dtype=np.int64)
        member = np.zeros((len(masks), n), dtype=bool)
        member[:, : n - 1] = ((masks[:, None] >> bits[None, :]) & 1).astype(bool)
        vals = (member[:, us] ^ member[:, vs]).astype(np.int64) @ ws
        low = int(vals.min())
        best = low if best is None else min(best, low)
    return best


def exact_edge_strength(G: WeightedGraph) -> dict[Edge, int]:
    """Exact strength of every edge by recursive minimum-cut decomposition.

    Each connected piece receives its global minimum cut value as a candidate
    for all its edges and is split along a minimizing shore; an edge's strength
    is the largest candidate it ever receives.
    """
    if G.n > EXACT_STRENGTH_MAX_N:
        raise OracleBoundError("instance exceeds strength backend bound")
    strength = {e: 0 for e in G.edge_weights()}
    pending = [list(range(G.n))]
    while pending:
        verts = pending.pop()
        sub, old = G.induced(verts)
        if sub.m == 0:
            continue
        comps = connected_components(sub)
        if len(comps) > 1:
            pending.extend([old[i] for i in b] for b in comps if len(b) > 1)
            continue
        lam, shore = global_min_cut_with_shore(sub)
        for u, v, _ in sub.edges():
            e = (old[u], old[v])
            if lam > strength[e]:
                strength[e] = lam
        side = [old[i] for i in shore]
        rest = [old[i] for i in range(sub.n) if i not in shore]
        for part in (side, rest):
            if len(part) > 1:
                pending.append(part)
    return strength


def definitional_edge_strength(G: WeightedGraph) -> dict[Edge, int]:
    """Strength straight from the definition: max over induced subgraphs of their min cut."""
    if G.n > DEFINITIONAL_STRENGTH_MAX_N:
        raise OracleBoundError("instance exceeds oracle bound")
    strength = {e: 0 for e in G.edge_weights()}
    for size in range(2, G.n + 1):
        for subset in combinations(range(G.n), size):
            sub, old = G.induced(subset)
            if sub.m == 0:
                continue
            lam = brute_force_global_min_cut(sub)
            for u, v, _ in sub.edges():
                e = (old[u], old[v])
                strength[e] = max(strength[e], lam)
    return strength
