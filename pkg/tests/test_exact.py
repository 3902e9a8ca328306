from itertools import combinations

import pytest
from hypothesis import given, settings

from conftest import graph, graphs
from stmincut.exact import (
    OracleBoundError,
    brute_force_global_min_cut,
    brute_force_min_st_cut,
    definitional_edge_strength,
    enumerate_min_st_cuts,
    exact_edge_strength,
    global_min_cut,
    global_min_cut_with_shore,
)
from stmincut.graph import WeightedGraph, connected_components, cut_weight
from stmincut.instances import gen_lower_bound


def _shores_by_hand(G, s, t):
    """Every shore containing s and not t, with its weight, by plain iteration."""
    others = [v for v in range(G.n) if v not in (s, t)]
    for r in range(len(others) + 1):
        for extra in combinations(others, r):
            x = {s, *extra}
            yield frozenset(x), cut_weight(G, x)


def test_brute_st_examples(path3):
    cert = brute_force_min_st_cut(path3, 0, 2)
    assert cert.value == 1 and cert.shore == {0}
    assert brute_force_min_st_cut(WeightedGraph(3, {(0, 1): 1}), 0, 2).value == 0


def test_brute_st_on_positive_family_instance():
    inst = gen_lower_bound(8, "positive", a=(2, 4), b=(3, 5), c=0)
    assert brute_force_min_st_cut(inst.graph, 0, 1).value == 2


def test_enumerate_examples(path3, two_paths):
    assert enumerate_min_st_cuts(path3, 0, 2) == [{0}, {0, 1}]
    assert enumerate_min_st_cuts(graph(2, (0, 1, 5)), 0, 1) == [{0}]
    shores = enumerate_min_st_cuts(two_paths, 0, 3)
    by_hand = sorted(sorted(x) for x, w in _shores_by_hand(two_paths, 0, 3) if w == 2)
    assert [sorted(x) for x in shores] == by_hand
    assert len(shores) == 4


@given(graphs(min_n=2, max_n=8))
def test_enumerate_matches_plain_iteration(G):
    t = G.n - 1
    table = list(_shores_by_hand(G, 0, t))
    low = min(w for _, w in table)
    expected = sorted(sorted(x) for x, w in table if w == low)
    assert [sorted(x) for x in enumerate_min_st_cuts(G, 0, t)] == expected
    cert = brute_force_min_st_cut(G, 0, t)
    assert cert.value == low and sorted(cert.shore) == expected[0]


def test_global_min_cut_examples(k4, two_triangles):
    assert global_min_cut(k4) == 3
    assert global_min_cut(two_triangles) == 1
    c5 = graph(5, *[(i, (i + 1) % 5, 1) for i in range(5)])
    assert global_min_cut(c5) == 2
    assert global_min_cut(WeightedGraph(4, {(0, 1): 3})) == 0


@given(graphs(min_n=2, max_n=9, max_w=6))
def test_stoer_wagner_matches_enumeration(G):
    lam, shore = global_min_cut_with_shore(G)
    assert lam == brute_force_global_min_cut(G)
    assert 0 in shore and len(shore) < G.n
    assert cut_weight(G, shore) == lam


def test_strength_examples(k4, two_triangles):
    assert exact_edge_strength(graph(2, (0, 1, 7))) == {(0, 1): 7}
    tri = definitional_edge_strength(two_triangles)
    assert tri[(2, 3)] == 1
    assert all(k == 2 for e, k in tri.items() if e != (2, 3))
    assert exact_edge_strength(two_triangles) == tri
    assert set(definitional_edge_strength(k4).values()) == {3}
    assert exact_edge_strength(k4) == definitional_edge_strength(k4)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=8, max_w=5))
def test_exact_strength_matches_definition(G):
    assert exact_edge_strength(G) == definitional_edge_strength(G)


@given(graphs(min_n=2, max_n=10, max_w=5))
def test_inverse_strength_sum_at_most_components(G):
    k = exact_edge_strength(G)
    total = sum(w / k[(u, v)] for u, v, w in G.edges())
    assert total <= G.n - len(connected_components(G)) + 1e-9


def test_oracle_guards():
    big = WeightedGraph(21)
    with pytest.raises(OracleBoundError, match="instance exceeds oracle bound"):
        brute_force_min_st_cut(big, 0, 1)
    with pytest.raises(OracleBoundError):
        enumerate_min_st_cuts(WeightedGraph(17), 0, 1)
    with pytest.raises(OracleBoundError):
        definitional_edge_strength(WeightedGraph(9))
