import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from stmincut.exact import exact_edge_strength
from stmincut.graph import GraphError, WeightedGraph
from stmincut.instances import gen_random
from stmincut.oracle import CostLedger, ListOracle, MatrixOracle
from stmincut.sparsify import (
    SparsifierError,
    SparsifyConfig,
    build_sparsifier,
    sampling_exponent,
    size_bound,
    sparsify_graph,
    verify_sparsifier,
    weight_bound,
)

# tiny c_rho forces real sampling at desk scale; bounds are relaxed to match
SAMPLING = SparsifyConfig(c_rho=0.05, c_size=1e9, c_W=1e9)


@pytest.mark.parametrize("q,j", [(5.0, 0), (1.0, 0), (0.5, 1), (0.49, 2), (0.25, 2), (0.2, 3), (1e-3, 10)])
def test_sampling_exponent(q, j):
    assert sampling_exponent(q) == j
    assert 2.0**-j <= min(1.0, q) and (j == 0 or 2.0 ** -(j - 1) > min(1.0, q))


def test_identity_when_every_probability_is_one():
    G = gen_random(10, 0.5, 3, seed=1)
    sp = sparsify_graph(G, 0.25, rng=0)
    assert sp.H == G and set(sp.exponents.values()) == {0} and not sp.sampled


@settings(deadline=None)
@given(graphs(min_n=3, max_n=10, max_w=5), st.integers(0, 2**31))
def test_sampled_output_is_integral_reweighting(G, seed):
    if G.m == 0:
        return
    sp = sparsify_graph(G, 0.25, seed, SAMPLING)
    k = exact_edge_strength(G)
    for (u, v), x in sp.H.edge_weights().items():
        j = sp.exponents[(u, v)]
        assert G.has_edge(u, v)
        assert isinstance(x, int) and x == G.weight(u, v) << j
        assert j == sampling_exponent(sp.rho * G.weight(u, v) / k[(u, v)])


def test_sampling_is_unbiased_in_total_weight():
    G = gen_random(12, 0.8, 4, seed=3)
    rng = np.random.default_rng(11)
    draws = [sparsify_graph(G, 0.25, rng, SAMPLING) for _ in range(1500)]
    assert draws[0].sampled
    mean = np.mean([d.H.total_weight for d in draws])
    sd = np.std([d.H.total_weight for d in draws]) / math.sqrt(len(draws))
    assert abs(mean - G.total_weight) < 5 * sd


def test_bounds_are_enforced():
    G = gen_random(10, 0.9, 4, seed=2)
    with pytest.raises(SparsifierError):
        sparsify_graph(G, 0.25, 0, SparsifyConfig(c_size=1e-3))
    with pytest.raises(SparsifierError):
        sparsify_graph(G, 0.25, 0, SparsifyConfig(c_W=1e-3))
    sp = sparsify_graph(G, 0.25, 0)
    assert sp.H.m <= size_bound(10, 0.25, 64) and sp.H.W <= weight_bound(10, 0.25, G.W, 64)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        sparsify_graph(gen_random(5, 1, 1, 0), 0.4)
    with pytest.raises(GraphError):
        sparsify_graph(WeightedGraph(4), 0.25)


@pytest.mark.parametrize("kind", ["list", "matrix"])
def test_build_charges_ledger(kind):
    G = gen_random(9, 0.5, 2, seed=5)
    O = ListOracle(G) if kind == "list" else MatrixOracle(G)
    L = CostLedger()
    sp = build_sparsifier(O, 0.2, 0, ledger=L)
    assert sp.H == G
    (e,) = L.entries
    if kind == "list":
        assert e.primitive == "sparsify-list" and e.modeled == math.ceil(math.sqrt(G.m * 9) / 0.2)
    else:
        assert e.primitive == "sparsify-matrix" and e.modeled == math.ceil(9**1.5 / 0.2)
    assert e.classical == O.total_queries


def test_verify_examples():
    G = gen_random(8, 0.7, 3, seed=4)
    assert verify_sparsifier(G, G, 0.01).ok
    chk = verify_sparsifier(G, WeightedGraph(8), 0.25)
    assert not chk.ok and chk.worst_ratio == 0.0 and chk.witness
    chk = verify_sparsifier(G, G.scaled(2), 0.25)
    assert not chk.ok and chk.worst_ratio == 2.0


def test_cut_preservation_trials_n10():
    passed = 0
    for seed in range(100):
        G = gen_random(10, 0.6, 3, seed)
        if G.m == 0:
            continue
        sp = sparsify_graph(G, 0.25, seed)
        passed += verify_sparsifier(G, sp.H, 0.25).ok
    assert passed >= 99
