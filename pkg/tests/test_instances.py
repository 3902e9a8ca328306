from math import comb

import pytest

from stmincut.exact import brute_force_min_st_cut
from stmincut.instances import (
    budget_side,
    degree_invariant_holds,
    family_size,
    gen_lower_bound,
    gen_lower_bound_for_budget,
    gen_random,
    positive_instances,
    positive_labels,
    side_a,
    side_b,
    verify_family_counting,
)


def test_random_examples():
    assert gen_random(7, 0.0, 3, seed=1).m == 0
    K = gen_random(7, 1.0, 1, seed=1)
    assert K.m == 7 * 6 // 2 and K.W == 1
    assert gen_random(15, 0.4, 9, seed=3) == gen_random(15, 0.4, 9, seed=3)
    assert gen_random(15, 0.4, 9, seed=3) != gen_random(15, 0.4, 9, seed=4)
    assert gen_random(30, 1.0, 4, seed=0).W <= 4


def test_negative_instance_n8():
    inst = gen_lower_bound(8)
    assert brute_force_min_st_cut(inst.graph, 0, 1).value == 0
    assert degree_invariant_holds(inst)
    assert side_a(8) == [2, 4, 6] and side_b(8) == [3, 5, 7]


def test_every_positive_n8_has_lambda_two():
    insts = list(positive_instances(8))
    assert len(insts) == family_size(8) == 2 * comb(3, 2) ** 2 == 18
    for inst in insts:
        assert degree_invariant_holds(inst)
        assert brute_force_min_st_cut(inst.graph, 0, 1).value == 2


def test_c_rule():
    inst = gen_lower_bound(8, "positive", a=(6, 2), b=(7, 3), c=0)
    assert set(inst.added) == {(2, 3), (6, 7)}
    inst = gen_lower_bound(8, "positive", a=(2, 6), b=(3, 7), c=1)
    assert set(inst.added) == {(2, 7), (3, 6)}
    assert set(inst.removed) == {(2, 6), (3, 7)}


def test_bad_labels_rejected():
    with pytest.raises(ValueError):
        gen_lower_bound(7)
    with pytest.raises(ValueError):
        gen_lower_bound(8, "positive", a=(2, 3), b=(5, 7))
    with pytest.raises(ValueError):
        gen_lower_bound(8, "positive", a=(2, 4), b=(3, 5), c=2)


@pytest.mark.parametrize("ordering", ["sorted", "slot"])
def test_orderings_are_permutations(ordering):
    for inst in positive_instances(10, ordering):
        for v in range(10):
            assert sorted(inst.order[v]) == inst.graph.neighbors(v)


def recount(n, ordering):
    """Per-position differing counts, built from edge sets without the library's tallies."""
    neg = gen_lower_bound(n).graph
    base = [neg.neighbors(v) for v in range(n)]
    counts = {}
    for a, b, c in positive_labels(n):
        inst = gen_lower_bound(n, "positive", a, b, c, ordering)
        lists = [sorted(inst.graph.neighbors(v)) for v in range(n)] if ordering == "sorted" else inst.order
        for v in range(n):
            for i, (x, y) in enumerate(zip(base[v], lists[v])):
                if x != y:
                    counts[(v, i + 1)] = counts.get((v, i + 1), 0) + 1
    return counts


@pytest.mark.parametrize("n", [6, 8, 10, 12])
def test_family_counting_slot_ordering(n):
    k = (n - 2) // 2
    rep = verify_family_counting(n, "slot", check_lambda=n <= 10)
    # a position (a_j, slot of a_l) changes exactly when the removed A pair is {a_j, a_l}
    assert rep.max_count == 2 * comb(k, 2) == rep.label_bound
    assert rep.st_max_count == 0 and rep.min_differing_positions == 4
    assert rep.instances == 2 * comb(k, 2) ** 2
    assert rep.ok
    assert {p: c for p, c in rep.counts.items() if c} == recount(n, "slot")


@pytest.mark.parametrize("n,expected_max", [(6, 2), (8, 10), (10, 24), (12, 52)])
def test_family_counting_sorted_ordering(n, expected_max):
    rep = verify_family_counting(n, "sorted")
    assert {p: c for p, c in rep.counts.items() if c} == recount(n, "sorted")
    assert rep.max_count == expected_max
    assert rep.st_max_count == 0 and rep.min_differing_positions >= 4
    assert rep.degree_ok and rep.ok
    assert rep.nominal_position_bound == 2 * comb(n - 2, 2)
    assert rep.nominal_instances == 2 * comb(n - 2, 2) ** 2


@pytest.mark.parametrize("m", [6, 12, 20, 42, 100])
def test_budget_instances_fit(m):
    inst = gen_lower_bound_for_budget(m)
    p = budget_side(m)
    assert inst.n == 2 * p + 2 and inst.graph.m <= m
    assert gen_lower_bound_for_budget(m + 1 + m // 2).graph.m <= m + 1 + m // 2
    if p >= 2:
        a = tuple(side_a(inst.n)[:2])
        b = tuple(side_b(inst.n)[:2])
        pos = gen_lower_bound_for_budget(m, "positive", a=a, b=b, c=1)
        assert pos.graph.m == inst.graph.m


def test_budget_too_small():
    with pytest.raises(ValueError):
        gen_lower_bound_for_budget(5)
