"""Bitmask kernels over adjacency masks.

Every routine takes ``adj``, a sequence where ``adj[v]`` is an int whose set
bits are the neighbours of ``v``.  Vertex sets are ints as well.  These are the
hot loops of the exhaustive solvers, so they avoid building Python sets.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def to_mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def union_neighbors(adj: Sequence[int], mask: int) -> int:
    out = 0
    for w in iter_bits(mask):
        out |= adj[w]
    return out


def is_two_club_mask(adj: Sequence[int], sub: int) -> bool:
    """True iff the subgraph induced by ``sub`` has diameter at most 2."""
    for v in iter_bits(sub):
        near = adj[v] & sub
        reach = near | (1 << v)
        for w in iter_bits(near):
            reach |= adj[w]
        if sub & ~reach:
            return False
    return True


def has_distance_three(adj: Sequence[int], v: int) -> bool:
    """True iff some vertex lies at distance exactly 3 from ``v``."""
    first = adj[v]
    seen = first | (1 << v)
    second = union_neighbors(adj, first) & ~seen
    seen |= second
    return bool(union_neighbors(adj, second) & ~seen)


def is_two_club_graph_masks(adj: Sequence[int]) -> bool:
    """A graph is a 2-club graph iff no pair of vertices is at distance 3."""
    return not any(has_distance_three(adj, v) for v in range(len(adj)))


def first_obstruction(adj: Sequence[int], marked: int = 0) -> tuple[int, int, int, int] | None:
    """Lexicographically smallest path x-u-v-y with d(x, y) = 3 and u, v unmarked."""
    free = ~marked
    for x in range(len(adj)):
        first = adj[x]
        seen = first | (1 << x)
        second = union_neighbors(adj, first) & ~seen
        if not second:
            continue
        seen |= second
        third = union_neighbors(adj, second) & ~seen
        if not third:
            continue
        for u in iter_bits(first & free):
            for v in iter_bits(adj[u] & second & free):
                ends = adj[v] & third
                if ends:
                    return (x, u, v, lowest_bit(ends))
    return None


def all_obstructions(adj: Sequence[int], marked: int = 0) -> Iterator[tuple[int, int, int, int]]:
    """Every path x-u-v-y with d(x, y) = 3 and u, v unmarked, with x < y."""
    free = ~marked
    for x in range(len(adj)):
        first = adj[x]
        seen = first | (1 << x)
        second = union_neighbors(adj, first) & ~seen
        seen |= second
        third = union_neighbors(adj, second) & ~seen
        third &= ~((1 << (x + 1)) - 1)
        if not third:
            continue
        for u in iter_bits(first & free):
            for v in iter_bits(adj[u] & second & free):
                for y in iter_bits(adj[v] & third):
                    yield (x, u, v, y)


def component_masks(adj: Sequence[int], within: int | None = None) -> list[int]:
    """Connected components of the subgraph induced by ``within``, by minimum vertex."""
    if within is None:
        within = (1 << len(adj)) - 1
    left = within
    out = []
    while left:
        start = left & -left
        comp = start
        frontier = start
        while frontier:
            frontier = union_neighbors(adj, frontier) & within & ~comp
            comp |= frontier
        out.append(comp)
        left &= ~comp
    return out
