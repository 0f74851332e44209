from __future__ import annotations

import itertools
import math

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoclub.errors import GraphFormatError, InvalidGraphError
from twoclub.generate import random_graph
from twoclub.graph import (
    Graph,
    Obstruction,
    connected_components,
    cycle_graph,
    disjoint_union,
    distance,
    find_obstruction,
    format_graph,
    from_networkx,
    induced_subgraph,
    is_forest,
    is_two_club,
    is_two_club_graph,
    parse_graph,
    path_graph,
    star_graph,
    to_networkx,
)


@st.composite
def graphs(draw, max_n: int = 9) -> Graph:
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


def nx_two_club(g: Graph, s) -> bool:
    h = to_networkx(g).subgraph(s)
    if h.number_of_nodes() <= 1:
        return True
    if not nx.is_connected(h):
        return False
    return nx.diameter(h) <= 2


def test_distance_examples(c6):
    assert distance(path_graph(4), 0, 3) == 3
    assert distance(c6, 2, 2) == 0
    assert distance(c6, 0, 3) == 3
    assert distance(Graph.from_edges(3, [(0, 1)]), 0, 2) == math.inf


def test_distance_rejects_bad_id(c6):
    with pytest.raises(InvalidGraphError):
        distance(c6, 0, 6)


@pytest.mark.parametrize(
    "g, expected",
    [
        (star_graph(4), True),
        (path_graph(6), False),
        (cycle_graph(5), True),
        (cycle_graph(6), False),
        (Graph.from_edges(0, []), True),
    ],
)
def test_is_two_club_whole_vertex_set(g, expected):
    assert is_two_club(g, range(g.n)) is expected


def test_distances_measured_inside_the_subset():
    # two vertices of C4 joined only through a vertex outside the set
    g = cycle_graph(4)
    assert not is_two_club(g, {0, 2})
    assert is_two_club(g, {0, 1, 2})


def test_is_two_club_graph_examples():
    triangles = disjoint_union([cycle_graph(3), cycle_graph(3)])
    assert is_two_club_graph(triangles)
    assert not is_two_club_graph(path_graph(6))
    assert is_two_club_graph(Graph.from_edges(0, []))


def test_connected_components_examples(c6):
    assert connected_components(Graph.from_edges(3, [])) == [{0}, {1}, {2}]
    assert connected_components(c6) == [frozenset(range(6))]
    cut = Graph.from_edges(6, [e for e in c6.edges() if e not in {(0, 5), (2, 3)}])
    assert [len(c) for c in connected_components(cut)] == [3, 3]


def test_find_obstruction_examples():
    assert find_obstruction(path_graph(6)) == Obstruction(0, 1, 2, 3)
    assert find_obstruction(path_graph(4), {1, 2}) is None
    assert find_obstruction(star_graph(5), {0}) is None


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_obstruction_absent_iff_two_club_graph(g):
    assert (find_obstruction(g) is None) == is_two_club_graph(g)


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_obstruction_is_a_geodesic(g):
    ob = find_obstruction(g)
    if ob is None:
        return
    x, u, v, y = ob.as_tuple()
    assert g.has_edge(x, u) and g.has_edge(u, v) and g.has_edge(v, y)
    assert distance(g, x, y) == 3


@settings(max_examples=100, deadline=None)
@given(graphs(9), st.data())
def test_is_two_club_matches_networkx(g, data):
    s = data.draw(st.sets(st.integers(0, max(g.n - 1, 0)), max_size=g.n)) if g.n else set()
    assert is_two_club(g, s) == nx_two_club(g, s)


@pytest.mark.parametrize("seed", range(10))
def test_distance_symmetric_on_random_graphs(seed):
    g = random_graph(20, 0.15, seed)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            assert distance(g, u, v) == distance(g, v, u)


def test_lexicographic_obstruction_matches_enumeration():
    g = random_graph(9, 0.3, 4)
    h = to_networkx(g)
    dist = dict(nx.all_pairs_shortest_path_length(h))
    paths = [
        (x, u, v, y)
        for x, u, v, y in itertools.permutations(range(g.n), 4)
        if g.has_edge(x, u) and g.has_edge(u, v) and g.has_edge(v, y) and dist[x].get(y) == 3
    ]
    expected = min(paths) if paths else None
    got = find_obstruction(g)
    assert (got.as_tuple() if got else None) == expected


def test_two_club_graph_on_random_larger_graphs():
    for seed in range(20):
        g = random_graph(50, 0.05, seed)
        expected = all(nx_two_club(g, c) for c in connected_components(g))
        assert is_two_club_graph(g) == expected
        assert (find_obstruction(g) is None) == expected


def test_round_trip_text_format():
    g = random_graph(12, 0.3, 3)
    text = format_graph(g)
    assert parse_graph(text) == g
    assert format_graph(parse_graph(text)) == text


@pytest.mark.parametrize(
    "text",
    [
        "e 1 2\n",
        "p gcc 2 1\ne 1 1\n",
        "p gcc 2 2\ne 1 2\ne 1 2\n",
        "p gcc 2 1\ne 1 3\n",
        "p gcc 3 2\ne 1 2\n",
        "p gcc 2 1\ne 0 1\n",
        "p gcc x 1\n",
    ],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


def test_parse_accepts_comments():
    g = parse_graph("c hello\np gcc 3 2\nc more\ne 1 2\ne 2 3\n")
    assert g == path_graph(3)


def test_graph_validates_symmetry():
    with pytest.raises(InvalidGraphError):
        Graph(2, (frozenset({1}), frozenset()))
    with pytest.raises(InvalidGraphError):
        Graph.from_edges(2, [(0, 0)])


def test_networkx_round_trip_and_forest():
    g = random_graph(10, 0.3, 9)
    assert from_networkx(to_networkx(g)) == g
    assert is_forest(path_graph(5)) and not is_forest(cycle_graph(5))


def test_induced_subgraph_table():
    sub, table = induced_subgraph(cycle_graph(6), [5, 0, 1])
    assert table == [0, 1, 5]
    assert sorted(sub.edges()) == [(0, 1), (0, 2)]
