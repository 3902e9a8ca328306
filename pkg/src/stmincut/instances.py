"""Seeded instance generators: random weighted graphs and the USTCON hard family.

Hard-family vertex naming: ``s = 0``, ``t = 1``, ``a_j = 2j`` and ``b_j = 2j + 1``
for ``j = 1..k`` with ``k = (n - 2) / 2``, so vertex ids follow the ordering
``s < t < a_1 < b_1 < ... < a_k < b_k``.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from stmincut.graph import WeightedGraph, canonical

FAMILY_COUNT_MAX_N = 12
ORDERINGS = ("sorted", "slot")


def gen_random(n: int, p: float, W: int, seed: int | None = None) -> WeightedGraph:
    """Each pair present independently with probability ``p``, weight uniform on ``1..W``."""
    if n < 2:
        raise ValueError("need at least two vertices")
    if not 0 <= p <= 1:
        raise ValueError("edge probability must lie in [0, 1]")
    if W < 1:
        raise ValueError("maximum weight must be at least 1")
    rng = np.random.default_rng(seed)
    us, vs = np.triu_indices(n, 1)
    present = rng.random(len(us)) < p
    weights = rng.integers(1, W + 1, size=len(us))
    return WeightedGraph(
        n, {(int(u), int(v)): int(w) for u, v, w, keep in zip(us, vs, weights, present) if keep}
    )


def side_a(n: int) -> list[int]:
    return [2 * j for j in range(1, (n - 2) // 2 + 1)]


def side_b(n: int) -> list[int]:
    return [2 * j + 1 for j in range(1, (n - 2) // 2 + 1)]


@dataclass(frozen=True)
class LowerBoundInstance:
    n: int
    kind: str
    graph: WeightedGraph
    order: tuple[tuple[int, ...], ...]
    a: tuple[int, int] | None = None
    b: tuple[int, int] | None = None
    c: int | None = None
    removed: tuple[tuple[int, int], ...] = field(default=())
    added: tuple[tuple[int, int], ...] = field(default=())


def _check_n(n: int) -> None:
    if n % 2 or n < 6:
        raise ValueError(f"family size must be even and at least 6, got {n}")


def _negative_edges(n: int) -> dict[tuple[int, int], int]:
    A, B = side_a(n), side_b(n)
    edges = {(0, a): 1 for a in A}
    edges.update({(1, b): 1 for b in B})
    edges.update({canonical(x, y): 1 for x, y in combinations(A, 2)})
    edges.update({canonical(x, y): 1 for x, y in combinations(B, 2)})
    return edges


def crossing_edges(a: tuple[int, int], b: tuple[int, int], c: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """The two A-B edges that replace ``a`` and ``b``."""
    a1, a2 = min(a), max(a)
    b1, b2 = min(b), max(b)
    if c == 0:
        return (a1, b1), (a2, b2)
    return (a1, b2), (a2, b1)


def gen_lower_bound(
    n: int,
    kind: str = "negative",
    a: tuple[int, int] | None = None,
    b: tuple[int, int] | None = None,
    c: int = 0,
    ordering: str = "sorted",
) -> LowerBoundInstance:
    """Build the negative instance or the positive instance labelled ``(a, b, c)``.

    ``ordering="sorted"`` lists every neighbor list in the global vertex order.
    ``ordering="slot"`` keeps the negative instance's lists and writes each new
    crossing neighbor into the slot of the removed one.
    """
    _check_n(n)
    if ordering not in ORDERINGS:
        raise ValueError(f"unknown ordering {ordering!r}")
    neg = _negative_edges(n)
    neg_graph = WeightedGraph(n, neg)
    neg_order = tuple(tuple(neg_graph.neighbors(v)) for v in range(n))
    if kind == "negative":
        return LowerBoundInstance(n, kind, neg_graph, neg_order)
    if kind != "positive":
        raise ValueError(f"unknown instance kind {kind!r}")
    A, B = set(side_a(n)), set(side_b(n))
    if a is None or b is None or len(set(a)) != 2 or not set(a) <= A or len(set(b)) != 2 or not set(b) <= B:
        raise ValueError("positive instances need a pair a from A and a pair b from B")
    if c not in (0, 1):
        raise ValueError("c must be 0 or 1")
    ea, eb = canonical(*a), canonical(*b)
    new1, new2 = crossing_edges(ea, eb, c)
    edges = dict(neg)
    del edges[ea], edges[eb]
    edges[canonical(*new1)] = 1
    edges[canonical(*new2)] = 1
    graph = WeightedGraph(n, edges)
    if ordering == "sorted":
        order = tuple(tuple(graph.neighbors(v)) for v in range(n))
    else:
        partner = {}
        for x, y in (new1, new2):
            partner[x] = y
            partner[y] = x
        lists = [list(lst) for lst in neg_order]
        for x, y in (ea, eb):
            lists[x][lists[x].index(y)] = partner[x]
            lists[y][lists[y].index(x)] = partner[y]
        order = tuple(tuple(lst) for lst in lists)
    return LowerBoundInstance(n, kind, graph, order, ea, eb, c, (ea, eb), (canonical(*new1), canonical(*new2)))


def positive_labels(n: int) -> Iterator[tuple[tuple[int, int], tuple[int, int], int]]:
    for a in combinations(side_a(n), 2):
        for b in combinations(side_b(n), 2):
            for c in (0, 1):
                yield a, b, c


def positive_instances(n: int, ordering: str = "sorted") -> Iterator[LowerBoundInstance]:
    for a, b, c in positive_labels(n):
        yield gen_lower_bound(n, "positive", a, b, c, ordering)


def family_size(n: int) -> int:
    """Number of positive instances: ``2 * C(k, 2)**2`` with ``k = (n-2)/2``."""
    _check_n(n)
    return 2 * comb((n - 2) // 2, 2) ** 2


def degree_invariant_holds(inst: LowerBoundInstance) -> bool:
    k = (inst.n - 2) // 2
    return all(inst.graph.degree(v) == k for v in range(2, inst.n))


def budget_side(m: int) -> int:
    """Largest ``p`` with ``2 * (p + C(p, 2)) <= m``."""
    p = 0
    while 2 * (p + 1 + comb(p + 1, 2)) <= m:
        p += 1
    return p


def gen_lower_bound_for_budget(m: int, kind: str = "negative", ordering: str = "sorted", **labels) -> LowerBoundInstance:
    """Hard-family instance on sides of size ``p = budget_side(m)``, using at most ``m`` edges."""
    p = budget_side(m)
    if p < 2:
        raise ValueError(f"edge budget {m} is too small for the construction")
    return gen_lower_bound(2 * p + 2, kind, ordering=ordering, **labels)


@dataclass
class FamilyReport:
    n: int
    ordering: str
    instances: int
    counts: dict[tuple[int, int], int]
    max_count: int
    st_max_count: int
    min_differing_positions: int
    degree_ok: bool
    lambda_ok: bool | None
    label_bound: int
    nominal_position_bound: int
    nominal_instances: int

    @property
    def ok(self) -> bool:
        """Exhaustive checks that hold for the construction as built."""
        good = (
            self.degree_ok
            and self.st_max_count == 0
            and self.min_differing_positions >= 4
            and self.instances == family_size(self.n)
            and self.lambda_ok is not False
        )
        if self.ordering == "slot":
            good = good and self.max_count == self.label_bound
        return good

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "ordering": self.ordering,
            "instances": self.instances,
            "max_count": self.max_count,
            "st_max_count": self.st_max_count,
            "min_differing_positions": self.min_differing_positions,
            "degree_ok": self.degree_ok,
            "lambda_ok": self.lambda_ok,
            "label_bound": self.label_bound,
            "nominal_position_bound": self.nominal_position_bound,
            "nominal_instances": self.nominal_instances,
            "ok": self.ok,
            "counts": [[v, i, c] for (v, i), c in sorted(self.counts.items())],
        }


def verify_family_counting(n: int, ordering: str = "sorted", check_lambda: bool = False) -> FamilyReport:
    """Count, for every adjacency-list position, the positive instances that differ there.

    Positions are ``(vertex, 1-based index)`` of the negative instance's lists.
    ``label_bound = 2 * C(k, 2)`` is the number of labels sharing a given
    ``a`` pair (free choice of ``b`` and ``c``); ``nominal_position_bound`` and
    ``nominal_instances`` are the closed forms ``2 * C(n-2, 2)`` and
    ``2 * C(n-2, 2)**2`` reported for comparison.
    """
    _check_n(n)
    if n > FAMILY_COUNT_MAX_N:
        raise ValueError(f"exhaustive family check is limited to n <= {FAMILY_COUNT_MAX_N}")
    neg = gen_lower_bound(n, "negative")
    counts = {(v, i + 1): 0 for v in range(n) for i in range(len(neg.order[v]))}
    degree_ok = degree_invariant_holds(neg)
    min_diff = None
    total = 0
    lambda_ok = True if check_lambda else None
    if check_lambda:
        from stmincut.maxflow import max_flow

        if max_flow(neg.graph, 0, 1).value != 0:
            lambda_ok = False
    for inst in positive_instances(n, ordering):
        total += 1
        degree_ok = degree_ok and degree_invariant_holds(inst)
        diff = 0
        for v in range(n):
            for i, (x, y) in enumerate(zip(neg.order[v], inst.order[v])):
                if x != y:
                    counts[(v, i + 1)] += 1
                    diff += 1
        min_diff = diff if min_diff is None else min(min_diff, diff)
        if check_lambda and max_flow(inst.graph, 0, 1).value != 2:
            lambda_ok = False
    st_max = max(c for (v, _), c in counts.items() if v in (0, 1))
    k = (n - 2) // 2
    return FamilyReport(
        n=n,
        ordering=ordering,
        instances=total,
        counts=counts,
        max_count=max(counts.values()),
        st_max_count=st_max,
        min_differing_positions=min_diff or 0,
        degree_ok=degree_ok,
        lambda_ok=lambda_ok,
        label_bound=2 * comb(k, 2),
        nominal_position_bound=2 * comb(n - 2, 2),
        nominal_instances=2 * comb(n - 2, 2) ** 2,
    )
