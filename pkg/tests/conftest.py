from __future__ import annotations

import numpy as np
import pytest

from bigcp.graph import Multigraph, graph_from_edges, random_bounded_degree_graph


def cycle(n: int) -> Multigraph:
    return graph_from_edges([(i, (i + 1) % n) for i in range(n)], n)


def path(n: int) -> Multigraph:
    return graph_from_edges([(i, i + 1) for i in range(n - 1)], n)


def edgeless(n: int) -> Multigraph:
    return Multigraph(n, ())


def random_graphs(seed: int, count: int, n_max: int, max_deg: int, n_min: int = 1):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        n_edges = int(rng.integers(0, n * max_deg // 2 + 1))
        out.append(random_bounded_degree_graph(n, max_deg, n_edges, rng))
    return out


@pytest.fixture
def C3():
    return cycle(3)


@pytest.fixture
def K2():
    return path(2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
