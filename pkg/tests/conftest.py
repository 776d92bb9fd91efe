import numpy as np
import pytest

from raamkit import Graph, complete_graph, complete_multipartite, empty_graph


@pytest.fixture
def toy_graph():
    # square 1-2-4 plus pendant-ish 3 attached to 4; complement splits
    # into {1,2,3} and {4}
    return Graph.from_edges(4, [(1, 2), (1, 4), (2, 4), (3, 4)])


@pytest.fixture
def k221_graph():
    return complete_multipartite([2, 2, 1])


@pytest.fixture
def empty2_graph():
    return empty_graph(2)


@pytest.fixture
def complete3_graph():
    return complete_graph(3)


@pytest.fixture
def rng():
    return np.random.default_rng(20260819)


def pytest_terminal_summary(terminalreporter):
    from .helpers import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance checks")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
