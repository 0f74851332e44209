"""Simple undirected graphs, distances, 2-club predicates and obstructions.

Vertices are contiguous integers ``0..n-1``.  Every vertex also carries a
label naming the original vertex it descends from; splitting a vertex creates
a copy with the same label, so covers over original vertices can be read back
from an edited graph.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import networkx as nx

from . import _bits
from .errors import GraphFormatError, InvalidGraphError

INFINITY = math.inf


@dataclass(frozen=True)
class Obstruction:
    """A path x-u-v-y whose endpoints are at distance exactly 3."""

    x: int
    u: int
    v: int
    y: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.x, self.u, self.v, self.y)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph over vertices ``0..n-1``.

    Use :meth:`from_edges` for ordinary construction; the raw constructor
    validates symmetry, simplicity and id ranges.
    """

    n: int
    adjacency: tuple[frozenset[int], ...]
    labels: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adjacency) != self.n:
            raise InvalidGraphError("adjacency length must equal n")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(self.n)))
        elif len(self.labels) != self.n:
            raise InvalidGraphError("labels length must equal n")
        for v, nbrs in enumerate(self.adjacency):
            for w in nbrs:
                if not 0 <= w < self.n:
                    raise InvalidGraphError(f"neighbour {w} of {v} out of range")
                if w == v:
                    raise InvalidGraphError(f"self-loop at {v}")
                if v not in self.adjacency[w]:
                    raise InvalidGraphError(f"asymmetric edge {v}-{w}")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[int] | None = None
    ) -> Graph:
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraphError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise InvalidGraphError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(s) for s in adj), tuple(labels) if labels else ())

    @classmethod
    def from_masks(cls, masks: Sequence[int], labels: Sequence[int] | None = None) -> Graph:
        adj = tuple(frozenset(_bits.iter_bits(m)) for m in masks)
        return cls(len(masks), adj, tuple(labels) if labels else ())

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Adjacency as bitmasks, for the exhaustive solvers."""
        return tuple(_bits.to_mask(nbrs) for nbrs in self.adjacency)

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adjacency) // 2

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, sorted."""
        return sorted((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(s) for s in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adjacency[u]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.adjacency, self.labels) == (other.n, other.adjacency, other.labels)

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency, self.labels))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise InvalidGraphError(f"vertex {v} out of range for n={g.n}")


def distance(g: Graph, u: int, v: int) -> float:
    """BFS shortest-path length; ``math.inf`` across components."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        for z in g.adjacency[w]:
            if z not in dist:
                if z == v:
                    return dist[w] + 1
                dist[z] = dist[w] + 1
                queue.append(z)
    return INFINITY


def is_two_club(g: Graph, s: Iterable[int]) -> bool:
    """True iff the subgraph induced by ``s`` has diameter at most 2.

    Distances are measured inside the induced subgraph, so a set whose members
    are close only through outside vertices is not a 2-club.
    """
    sub = 0
    for v in s:
        _check_vertex(g, v)
        sub |= 1 << v
    return _bits.is_two_club_mask(g.masks, sub)


def is_two_club_graph(g: Graph) -> bool:
    """True iff every connected component of ``g`` is a 2-club."""
    return _bits.is_two_club_graph_masks(g.masks)


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Components ordered by their minimum vertex."""
    return [frozenset(_bits.iter_bits(c)) for c in _bits.component_masks(g.masks)]


def find_obstruction(g: Graph, marked: Iterable[int] = ()) -> Obstruction | None:
    """Smallest path x-u-v-y (lexicographic) with d(x, y) = 3 and u, v unmarked."""
    found = _bits.first_obstruction(g.masks, _bits.to_mask(marked))
    return Obstruction(*found) if found else None


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph on ``vertices`` relabelled to ``0..k-1`` in increasing order.

    Returns the subgraph and the list mapping new ids back to ids in ``g``.
    Labels are carried over.
    """
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    adj = tuple(frozenset(index[w] for w in g.adjacency[v] if w in index) for v in keep)
    labels = tuple(g.labels[v] for v in keep)
    return Graph(len(keep), adj, labels), keep


def remove_vertices(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Graph with ``vertices`` removed, plus the new-to-old id table."""
    drop = set(vertices)
    return induced_subgraph(g, (v for v in range(g.n) if v not in drop))


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    """Place graphs side by side, shifting ids in order."""
    edges: list[tuple[int, int]] = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges())
        offset += h.n
    return Graph.from_edges(offset, edges)


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(connected_components(g))


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_networkx(h: nx.Graph) -> Graph:
    """Convert a networkx graph, relabelling nodes in sorted order."""
    nodes = sorted(h.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), ((index[a], index[b]) for a, b in h.edges()))


def path_graph(n: int) -> Graph:
    """Path on ``n`` vertices ``0-1-...-(n-1)``."""
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    """Star with center 0 and ``leaves`` leaves."""
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def format_graph(g: Graph) -> str:
    """Serialize in the ``p gcc`` text format with 1-based ids."""
    lines = [f"p gcc {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse the ``p gcc`` text format.

    Raises :class:`GraphFormatError` on a malformed header, out-of-range ids,
    duplicate edges, self-loops or an edge count that disagrees with the header.
    """
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] != "gcc":
                raise GraphFormatError(f"line {lineno}: expected 'p gcc <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: non-integer header") from exc
            if n < 0 or m < 0:
                raise GraphFormatError(f"line {lineno}: negative size")
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before header")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: non-integer vertex id") from exc
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"line {lineno}: vertex id out of range 1..{n}")
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(f"line {lineno}: duplicate edge {u}-{v}")
            seen.add(key)
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise GraphFormatError("missing 'p gcc' header")
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_graph(g))
