import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from conftest import graph, graphs
from stmincut import kernels
from stmincut.exact import brute_force_min_st_cut
from stmincut.graph import WeightedGraph, cut_weight
from stmincut.instances import gen_lower_bound, gen_random
from stmincut.maxflow import (
    Flow,
    check_flow,
    check_flow_weight_bound,
    is_noncircular,
    make_noncircular,
    max_flow,
    min_cut_shore_from_residual,
    zero_flow,
)

BACKENDS = ["python"] + (["compiled"] if kernels.compiled_available() else [])


def scipy_flow_value(G, s, t):
    """Independent maximum flow: both arc directions carry the edge capacity."""
    us, vs, ws = G.arrays()
    rows = np.concatenate([us, vs]).astype(np.int32)
    cols = np.concatenate([vs, us]).astype(np.int32)
    caps = np.concatenate([ws, ws]).astype(np.int32)
    A = csr_matrix((caps, (rows, cols)), shape=(G.n, G.n))
    return int(maximum_flow(A, s, t).flow_value)


@pytest.mark.parametrize("backend", BACKENDS)
def test_examples(backend, path3):
    assert max_flow(path3, 0, 2, backend).value == 1
    F = max_flow(WeightedGraph(3, {(0, 1): 4}), 0, 2, backend)
    assert F.value == 0 and F.values == {}
    inst = gen_lower_bound(8, "positive", a=(2, 6), b=(3, 7), c=1)
    assert max_flow(inst.graph, 0, 1, backend).value == 2


@pytest.mark.parametrize("backend", BACKENDS)
@settings(max_examples=80, deadline=None)
@given(G=graphs(min_n=2, max_n=12, max_w=6))
def test_value_matches_brute_force(backend, G):
    F = max_flow(G, 0, G.n - 1, backend)
    check_flow(G, F)
    assert F.value == brute_force_min_st_cut(G, 0, G.n - 1).value


@pytest.mark.parametrize("seed", range(12))
def test_value_matches_scipy_on_larger_graphs(seed):
    G = gen_random(40 + 5 * seed, 0.2, 1 + seed % 5, seed)
    s, t = 0, G.n - 1
    expected = scipy_flow_value(G, s, t)
    for backend in BACKENDS:
        F = max_flow(G, s, t, backend)
        assert F.value == expected
        shore = min_cut_shore_from_residual(G, F, s)
        assert cut_weight(G, shore) == expected


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
@settings(max_examples=60, deadline=None)
@given(G=graphs(min_n=2, max_n=14, max_w=9))
def test_backends_agree_exactly(G):
    us, vs, ws = G.arrays()
    py, cy = kernels.get("python"), kernels.get("compiled")
    if G.n >= 2:
        a, b = py.stoer_wagner(G.n, us, vs, ws), cy.stoer_wagner(G.n, us, vs, ws)
        assert a[0] == b[0] and np.array_equal(a[1], b[1])
    a, b = py.dinic(G.n, us, vs, ws, 0, G.n - 1), cy.dinic(G.n, us, vs, ws, 0, G.n - 1)
    assert a[0] == b[0] and np.array_equal(a[1], b[1])


def test_noncircular_examples():
    G = graph(5, (0, 1, 1), (1, 4, 1), (1, 2, 1), (2, 3, 1), (1, 3, 1))
    # path 0->1->4 plus the circulation 1->2->3->1
    F = Flow(5, 0, 4, 1, {(0, 1): 1, (1, 4): 1, (1, 2): 1, (2, 3): 1, (1, 3): -1})
    check_flow(G, F)
    assert not is_noncircular(F)
    F2 = make_noncircular(F)
    assert is_noncircular(F2) and F2.value == 1
    assert F2.values == {(0, 1): 1, (1, 4): 1}
    acyclic = Flow(5, 0, 4, 1, {(0, 1): 1, (1, 4): 1})
    assert make_noncircular(acyclic) == acyclic
    assert make_noncircular(zero_flow(5, 0, 4)) == zero_flow(5, 0, 4)


@given(graphs(min_n=3, max_n=10, max_w=5), st.integers(0, 2**31))
def test_noncircular_shrinks_per_edge(G, seed):
    F = max_flow(G, 0, G.n - 1)
    rng = np.random.default_rng(seed)
    # add a random circulation along a cycle if one exists in a triangle
    vals = dict(F.values)
    tris = [(a, b, c) for a, b, w1 in G.edges() for c in range(b + 1, G.n) if G.has_edge(a, c) and G.has_edge(b, c)]
    if tris:
        a, b, c = tris[rng.integers(len(tris))]
        for u, v in ((a, b), (b, c), (c, a)):
            key = (min(u, v), max(u, v))
            sign = 1 if u < v else -1
            vals[key] = vals.get(key, 0) + sign
        vals = {e: f for e, f in vals.items() if f}
        if any(abs(f) > G.weight(*e) for e, f in vals.items()):
            return
    F = Flow(F.n, F.s, F.t, F.value, vals)
    F2 = make_noncircular(F)
    assert is_noncircular(F2) and F2.value == F.value
    check_flow(G, F2)
    assert all(abs(F2.values.get(e, 0)) <= abs(f) for e, f in F.values.items())
    assert set(F2.values) <= set(F.values)


def test_residual_shore_examples(path3, two_paths):
    assert min_cut_shore_from_residual(path3, max_flow(path3, 0, 2), 0) == {0}
    one = graph(2, (0, 1, 3))
    assert min_cut_shore_from_residual(one, max_flow(one, 0, 1), 0) == {0}
    F = max_flow(two_paths, 0, 3)
    shore = min_cut_shore_from_residual(two_paths, F, 0)
    assert F.value == 2 and shore == {0} and cut_weight(two_paths, shore) == 2


def test_flow_weight_bound_examples():
    assert check_flow_weight_bound(zero_flow(3, 0, 2), 3, 1).ok
    n = 9
    P = graph(n, *[(i, i + 1, 1) for i in range(n - 1)])
    F = max_flow(P, 0, n - 1)
    chk = check_flow_weight_bound(F, n, 1)
    assert F.total_weight() == n - 1 and chk.ok
    inst = gen_lower_bound(8, "positive", a=(2, 4), b=(5, 7), c=0)
    F = make_noncircular(max_flow(inst.graph, 0, 1))
    chk = check_flow_weight_bound(F, 8, 1)
    assert F.value == 2 and chk.ok and chk.total <= 10 * 8 * math.sqrt(2)


@settings(deadline=None)
@given(graphs(min_n=2, max_n=12, max_w=8))
def test_flow_weight_bound_on_random(G):
    F = make_noncircular(max_flow(G, 0, G.n - 1))
    assert check_flow_weight_bound(F, G.n, max(G.W, 1)).ok
