import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graph, graphs
from stmincut.graph import GraphError, WeightedGraph
from stmincut.oracle import (
    CostLedger,
    ListOracle,
    MatrixOracle,
    ceil_log2,
    charge,
    find_max_weight,
    grover_cost,
    grover_threshold_search,
    locate,
    list_offsets,
    read_graph,
)


def test_list_oracle_queries(weighted_triangle):
    O = ListOracle(weighted_triangle, audit=True)
    assert O.degree(0) == 2
    assert [O.neighbor(0, i) for i in (1, 2)] == [1, 2]
    assert O.weight(0, 1) == 2
    assert O.counters == {"degree": 1, "neighbor": 2, "weight": 1}
    assert O.total_queries == len(O.calls) == 4
    with pytest.raises(IndexError):
        O.neighbor(0, 3)


def test_pinned_order_must_be_permutation(path3):
    ListOracle(path3, order=[[1], [2, 0], [1]])
    with pytest.raises(GraphError):
        ListOracle(path3, order=[[1], [2], [1]])


def test_matrix_oracle(weighted_triangle):
    O = MatrixOracle(weighted_triangle)
    assert O.entry(0, 1) == 2 and O.entry(1, 0) == 2 and O.entry(1, 1) == 0
    assert O.total_queries == 3


@given(graphs(min_n=2, max_n=8))
def test_read_graph_round_trips(G):
    assert read_graph(ListOracle(G)) == G
    assert read_graph(MatrixOracle(G)) == G


@given(graphs(min_n=2, max_n=8), st.integers(0, 50))
def test_locate_inverts_offsets(G, j):
    O = ListOracle(G)
    offs = list_offsets(O)
    if offs[-1] == 0:
        return
    j %= offs[-1]
    v, i = locate(offs, j)
    assert offs[v] + i - 1 == j and 1 <= i <= G.degree(v)


def independent_grover_cost(t, N):
    logs = 1 if N == 1 else math.ceil(math.log2(N))
    return math.ceil(math.sqrt(t * N)) * logs


def test_grover_examples():
    res = grover_threshold_search(lambda i: 0, 10, 3, rng=0)
    assert res.positions == () and not res.aborted and res.sound
    ones = {3, 9}
    res = grover_threshold_search(lambda i: int(i in ones), 16, 4, rng=0)
    assert res.positions == (3, 9)
    assert res.modeled_cost == 32 == math.ceil(math.sqrt(64)) * 4
    assert grover_cost(1, 1) == 1


def test_grover_abort_rate_above_threshold():
    rng = np.random.default_rng(7)
    aborted = 0
    for _ in range(1000):
        N = int(rng.integers(2, 40))
        t = int(rng.integers(1, N))
        ones = set(rng.choice(N, size=t + 1, replace=False).tolist())
        res = grover_threshold_search(lambda i: int(i in ones), N, t, rng)
        if res.aborted:
            aborted += 1
        else:
            assert not res.sound and len(res.positions) == t + 1
            assert set(res.positions) <= ones
    assert aborted >= 900 - 30


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5, 7, 8, 9, 16, 17, 1000, 1024, 1025])
def test_ceil_log2(N):
    assert ceil_log2(N) == (1 if N == 1 else math.ceil(math.log2(N)))


@given(st.integers(1, 5000), st.integers(1, 5000))
def test_grover_cost_formula(a, b):
    N, t = max(a, b), min(a, b)
    assert grover_cost(t, N) == independent_grover_cost(t, N)


def test_charge_examples():
    L = CostLedger()
    charge(L, "sparsify-list", {"m": 10**4, "n": 10**2, "eps": 0.1})
    charge(L, "grover", {"t": 1, "N": 1})
    charge(L, "sparsify-matrix", {"n": 10**4, "eps": 0.1})
    assert [e.modeled for e in L.entries] == [10**4, 1, 10**7]
    assert L.modeled_total == 10**4 + 1 + 10**7
    assert CostLedger.from_dict(L.to_dict()) == L
    with pytest.raises(ValueError):
        charge(L, "teleport", {})


def test_find_max_weight_examples(path3):
    assert find_max_weight(ListOracle(path3)) == 1
    G = graph(4, (0, 1, 1), (1, 2, 5), (2, 3, 3))
    L = CostLedger()
    assert find_max_weight(ListOracle(G), L) == 5
    assert L.entries[0].modeled == math.ceil(math.sqrt(2 * 3))
    assert find_max_weight(MatrixOracle(G)) == 5
    assert find_max_weight(ListOracle(WeightedGraph(3))) == 0
    L = CostLedger()
    find_max_weight(MatrixOracle(G), L, c_dh=2.0)
    assert L.entries[0].modeled == 2 * 4


class CountingList(ListOracle):
    """Counts calls on its own, independently of the oracle's counters."""

    def __init__(self, *a, **kw):
        super().__init__(*a, **kw)
        self.seen = 0

    def degree(self, v):
        self.seen += 1
        return super().degree(v)

    def neighbor(self, v, i):
        self.seen += 1
        return super().neighbor(v, i)

    def weight(self, v, i):
        self.seen += 1
        return super().weight(v, i)


@given(graphs(min_n=2, max_n=8))
def test_counters_match_independent_count(G):
    O = CountingList(G, audit=True)
    L = CostLedger()
    find_max_weight(O, L)
    read_graph(O)
    assert O.total_queries == O.seen == len(O.calls)
    assert L.classical_total <= O.seen
