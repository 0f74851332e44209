from __future__ import annotations

import pytest

from named_graphs import LEAF_TREE_EDGES, POSTORDER_TREE_EDGES, COVER_EXAMPLE_EDGES, p5

from twoclub.graph import Graph, cycle_graph


@pytest.fixture
def path5() -> Graph:
    return p5()


@pytest.fixture
def c6() -> Graph:
    return cycle_graph(6)


@pytest.fixture
def cover_graph() -> Graph:
    return Graph.from_edges(9, COVER_EXAMPLE_EDGES)


@pytest.fixture
def leaf_tree() -> Graph:
    return Graph.from_edges(13, LEAF_TREE_EDGES)


@pytest.fixture
def postorder_tree() -> Graph:
    return Graph.from_edges(11, POSTORDER_TREE_EDGES)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        name, passed, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number} ({name}): {'PASS' if passed else 'FAIL'}: {detail}")
