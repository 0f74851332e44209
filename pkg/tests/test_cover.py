from __future__ import annotations

import random

import pytest
from named_graphs import COVER_EXAMPLE_SETS

from twoclub.cover import (
    TwoClubCover,
    cover_cost,
    cover_from_script,
    format_cover,
    min_cover,
    min_cover_cost,
    parse_cover,
    script_from_cover,
    two_club_subsets,
    uncovered_edges,
    validate_cover,
)
from twoclub.edits import DeleteEdge, EditScript, Problem, Split, final_label_sets, script, verify_script
from twoclub.errors import InvalidCoverError, SizeBoundError
from twoclub.generate import random_graph
from twoclub.graph import Graph, connected_components, cycle_graph, disjoint_union, path_graph, star_graph
from twoclub import _bits


def random_cover(g: Graph, rng: random.Random) -> TwoClubCover:
    family = two_club_subsets(g)
    sets, covered = [], 0
    full = (1 << g.n) - 1
    while covered != full:
        v = _bits.lowest_bit(full & ~covered)
        options = [m for m in family if m >> v & 1]
        m = rng.choice(options)
        sets.append(frozenset(_bits.iter_bits(m)))
        covered |= m
    for _ in range(rng.randrange(3)):
        sets.append(frozenset(_bits.iter_bits(rng.choice(family))))
    return TwoClubCover(tuple(sets))


def test_cover_graph_cover_cost(cover_graph):
    c = TwoClubCover.of(COVER_EXAMPLE_SETS)
    assert cover_cost(cover_graph, c) == 2
    assert uncovered_edges(cover_graph, c) == [(3, 6)]


def test_cover_graph_cover_script(cover_graph):
    c = TwoClubCover.of(COVER_EXAMPLE_SETS)
    s = script_from_cover(cover_graph, c)
    assert len(s.deletions) == 1 and len(s.splits) == 1
    rep = verify_script(cover_graph, s, budget=2)
    assert rep.ok
    assert sorted(map(sorted, final_label_sets(rep.final))) == sorted(map(sorted, COVER_EXAMPLE_SETS))


def test_component_cover_costs_nothing():
    g = disjoint_union([cycle_graph(5), star_graph(3)])
    c = TwoClubCover(tuple(connected_components(g)))
    assert cover_cost(g, c) == 0
    assert script_from_cover(g, c) == EditScript((), Problem.SPLITS_ONLY)


def test_p5_cover_is_one_deletion(path5):
    c = TwoClubCover.of([{0, 1, 2}, {3, 4, 5}])
    assert cover_cost(path5, c) == 1
    assert script_from_cover(path5, c).ops == (DeleteEdge(2, 3),)


def test_cover_from_script_examples(path5):
    tri = cycle_graph(3)
    assert cover_from_script(tri, EditScript()).sets == (frozenset({0, 1, 2}),)
    c = cover_from_script(path5, script([DeleteEdge(2, 3)]))
    assert sorted(map(sorted, c.sets)) == [[0, 1, 2], [3, 4, 5]]
    assert cover_cost(path5, c) == 1
    two = script([Split(2, frozenset({1}), frozenset({3})), Split(3, frozenset({4}), frozenset({6}))])
    c = cover_from_script(path5, two)
    assert cover_cost(path5, c) == 2
    assert sorted(map(sorted, c.sets)) == [[0, 1, 2], [2, 3], [3, 4, 5]]


def test_cover_from_script_requires_two_club_graph(path5):
    with pytest.raises(InvalidCoverError):
        cover_from_script(path5, EditScript())


@pytest.mark.parametrize(
    "sets",
    [
        [{0, 1, 2}, {3, 4}],
        [{0, 1, 2, 3}, {3, 4, 5}],
    ],
    ids=["misses-a-vertex", "set-not-a-2-club"],
)
def test_invalid_covers_rejected(path5, sets):
    with pytest.raises(InvalidCoverError):
        validate_cover(path5, TwoClubCover.of(sets))


def test_singletons_are_a_valid_cover(path5):
    c = TwoClubCover.of([{v} for v in range(6)])
    validate_cover(path5, c)
    assert cover_cost(path5, c) == 5


@pytest.mark.parametrize(
    "g, edge_covering, expected",
    [
        (path_graph(6), False, 1),
        (path_graph(6), True, 2),
        (cycle_graph(6), False, 2),
        (cycle_graph(6), True, 3),
        (star_graph(5), False, 0),
    ],
)
def test_min_cover_values(g, edge_covering, expected):
    cost, c = min_cover(g, edge_covering)
    assert cost == expected
    assert cover_cost(g, c) == cost
    if edge_covering:
        assert not uncovered_edges(g, c)


def test_cover_graph_minimum(cover_graph):
    assert min_cover_cost(cover_graph, False, size_bound=9) == 2
    assert min_cover_cost(cover_graph, True, size_bound=9) == 3


def test_size_bound(cover_graph):
    with pytest.raises(SizeBoundError):
        min_cover_cost(cover_graph)


def test_minimum_cover_realizes(cover_graph):
    cost, c = min_cover(cover_graph, False, size_bound=9)
    s = script_from_cover(cover_graph, c)
    assert verify_script(cover_graph, s, budget=cost).ok


@pytest.mark.parametrize("seed", range(40))
def test_cover_script_round_trip(seed):
    rng = random.Random(seed)
    g = random_graph(rng.randrange(2, 8), rng.choice([0.3, 0.5, 0.7]), seed)
    c = random_cover(g, rng)
    s = script_from_cover(g, c)
    rep = verify_script(g, s)
    assert rep.ok
    assert len(s) == cover_cost(g, c.canonical()) <= cover_cost(g, c)
    back = cover_from_script(g, s)
    assert cover_cost(g, back) <= cover_cost(g, c)


@pytest.mark.parametrize("seed", range(40))
def test_exclusive_cover_script(seed):
    rng = random.Random(seed)
    g = random_graph(rng.randrange(2, 8), 0.5, seed)
    c = random_cover(g, rng)
    try:
        s = script_from_cover(g, c, exclusive=True)
    except InvalidCoverError:
        return
    rep = verify_script(g, s, exclusive=True)
    assert rep.ok and len(s) == cover_cost(g, c.canonical())


def test_cover_text_round_trip():
    c = TwoClubCover.of(COVER_EXAMPLE_SETS)
    text = format_cover(c)
    assert text == "1,2,3,4\n4,5,6\n7,8,9\n"
    assert parse_cover(text) == c
    assert format_cover(parse_cover(text)) == text


def test_canonical_drops_duplicates_and_covered_singletons():
    c = TwoClubCover.of([{0, 1}, {0, 1}, {1}, {2}])
    assert c.canonical().sets == (frozenset({0, 1}), frozenset({2}))
