from __future__ import annotations

import pytest
from hypothesis import strategies as st

from stmincut.graph import WeightedGraph

# (criterion, passed, detail) rows filled by test_acceptance
ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


def graph(n, *edges):
    return WeightedGraph.from_edges(n, [(u, v, w) for u, v, w in edges])


@pytest.fixture
def path3():
    """s=0 - a=1 - t=2, unit weights."""
    return graph(3, (0, 1, 1), (1, 2, 1))


@pytest.fixture
def k4():
    return graph(4, *[(u, v, 1) for u in range(4) for v in range(u + 1, 4)])


@pytest.fixture
def weighted_triangle():
    """s=0, t=1, u=2 with w(s,t)=2, w(s,u)=1, w(u,t)=1."""
    return graph(3, (0, 1, 2), (0, 2, 1), (2, 1, 1))


@pytest.fixture
def two_triangles():
    """Unit triangles {0,1,2} and {3,4,5} joined by the bridge (2,3)."""
    return graph(6, (0, 1, 1), (0, 2, 1), (1, 2, 1), (3, 4, 1), (3, 5, 1), (4, 5, 1), (2, 3, 1))


@pytest.fixture
def square():
    """s=0, u=1, t=2, v=3 on a 4-cycle s-u-t-v-s."""
    return graph(4, (0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1))


@pytest.fixture
def two_paths():
    """s=0 - u=1 - t=3 and s=0 - v=2 - t=3, unit weights."""
    return graph(4, (0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1))


@st.composite
def graphs(draw, min_n=2, max_n=8, max_w=4):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    weights = draw(st.lists(st.integers(1, max_w), min_size=len(chosen), max_size=len(chosen)))
    return WeightedGraph(n, dict(zip(chosen, weights)))
