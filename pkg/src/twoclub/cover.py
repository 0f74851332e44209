"""2-club covers and their translation to and from edit scripts.

A cover is a family of vertex sets of the original graph, each inducing a
2-club, whose union is every vertex.  Its cost is the number of extra
memberships (a vertex in ``r`` sets contributes ``r - 1``) plus the number of
edges that no single set contains.  The minimum cost equals the deletion-and-
split optimum; restricting to covers that contain every edge gives the
split-only optimum.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

from . import _bits
from .edits import EditScript, Problem, WorkingGraph, apply_script, final_label_sets
from .errors import GraphFormatError, InvalidCoverError, SizeBoundError
from .graph import Graph, is_two_club_graph

DEFAULT_SIZE_BOUND = 8

EdgeOwners = Mapping[tuple[int, int], int]


@dataclass(frozen=True)
class TwoClubCover:
    """Sets of original vertices; order matters only for script construction."""

    sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))

    @classmethod
    def of(cls, sets: Iterable[Iterable[int]]) -> TwoClubCover:
        return cls(tuple(frozenset(s) for s in sets))

    def __len__(self) -> int:
        return len(self.sets)

    def multiplicity(self, v: int) -> int:
        return sum(1 for s in self.sets if v in s)

    def canonical(self) -> TwoClubCover:
        """Drop duplicate sets and redundant singletons; neither lowers the cost."""
        seen: list[frozenset[int]] = []
        for s in self.sets:
            if s and s not in seen:
                seen.append(s)
        kept = [
            s for s in seen if len(s) > 1 or not any(s < t for t in seen)
        ]
        return TwoClubCover(tuple(kept))

    def as_sorted_lists(self) -> list[list[int]]:
        return [sorted(s) for s in self.sets]


def validate_cover(g: Graph, c: TwoClubCover) -> None:
    """Raise :class:`InvalidCoverError` unless ``c`` is a 2-club cover of ``g``."""
    union: set[int] = set()
    masks = g.masks
    for i, s in enumerate(c.sets):
        if any(not 0 <= v < g.n for v in s):
            raise InvalidCoverError(f"set {i} has a vertex outside 0..{g.n - 1}")
        if not _bits.is_two_club_mask(masks, _bits.to_mask(s)):
            raise InvalidCoverError(f"set {i} = {sorted(s)} is not a 2-club")
        union |= s
    if len(union) != g.n:
        missing = sorted(set(range(g.n)) - union)
        raise InvalidCoverError(f"vertices {missing} are not covered")


def uncovered_edges(g: Graph, c: TwoClubCover) -> list[tuple[int, int]]:
    return [(u, v) for u, v in g.edges() if not any(u in s and v in s for s in c.sets)]


def cover_cost(g: Graph, c: TwoClubCover) -> int:
    """Extra memberships plus edges not inside any set."""
    validate_cover(g, c)
    extra = sum(len(s) for s in c.sets) - g.n
    return extra + len(uncovered_edges(g, c))


def realize_cover(
    work: WorkingGraph,
    sets: Sequence[frozenset[int]],
    owners: EdgeOwners | None = None,
    exclusive: bool = False,
) -> None:
    """Emit operations on ``work`` so the vertices of ``sets`` split into the sets.

    The vertices must be unsplit in ``work`` and their current edges must stay
    inside the union of ``sets``.  First every edge that no set contains is
    deleted; then each vertex is split once per containing set except the
    last, in vertex order.  With ``owners`` an edge is kept only in the set it
    maps to, which makes every split exclusive.
    """
    order: dict[int, list[int]] = {}
    for j, s in enumerate(sets):
        for v in s:
            order.setdefault(v, []).append(j)
    if owners is None and exclusive:
        owners = default_owners(sets)
    for u in sorted(order):
        for w in sorted(work.adj[u]):
            if u < w and not set(order[u]) & set(order.get(w, ())):
                work.delete(u, w)
    home: dict[int, set[int]] = {v: set(js) for v, js in order.items()}
    label = work.labels
    for v in sorted(order):
        js = order[v]
        for pos, j in enumerate(js[:-1]):
            later = set(js[pos + 1:])
            off, keep = set(), set()
            for w in work.adj[v]:
                peers = home[w]
                if owners is None:
                    if j in peers:
                        off.add(w)
                    if peers & later:
                        keep.add(w)
                else:
                    a, b = label[v], label[w]
                    owner = owners[(a, b) if a < b else (b, a)]
                    (off if owner == j else keep).add(w)
            new = work.split(v, keep, off, exclusive)
            home[new] = {j}
            home[v] = later


def default_owners(sets: Sequence[frozenset[int]]) -> dict[tuple[int, int], int]:
    """Map each vertex pair to the first set containing both."""
    out: dict[tuple[int, int], int] = {}
    for j, s in enumerate(sets):
        members = sorted(s)
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                out.setdefault((a, b), j)
    return out


def script_from_cover(
    g: Graph,
    c: TwoClubCover,
    owners: EdgeOwners | None = None,
    exclusive: bool = False,
) -> EditScript:
    """Script of length ``cover_cost`` whose final components are the sets of ``c``.

    The cover is canonicalized first.  In exclusive mode each set must remain a
    2-club using only the edges assigned to it by ``owners``.
    """
    validate_cover(g, c)
    c = c.canonical()
    if exclusive:
        owners = dict(owners) if owners is not None else default_owners(c.sets)
        check_owned_cover(g, c.sets, owners)
    work = WorkingGraph(g)
    realize_cover(work, c.sets, owners, exclusive)
    problem = Problem.SPLITS_ONLY if not uncovered_edges(g, c) else Problem.DELETIONS_AND_SPLITS
    return work.script(problem)


def check_owned_cover(
    g: Graph, sets: Sequence[frozenset[int]], owners: EdgeOwners
) -> None:
    """Raise unless every set is a 2-club using only the edges it owns."""
    for j, s in enumerate(sets):
        owned = [0] * g.n
        for a in s:
            for b in g.adjacency[a]:
                if b in s and owners.get((min(a, b), max(a, b))) == j:
                    owned[a] |= 1 << b
        if not _bits.is_two_club_mask(owned, _bits.to_mask(s)):
            raise InvalidCoverError(f"set {j} is not a 2-club on its owned edges")


def cover_from_script(g: Graph, s: EditScript, exclusive: bool = False) -> TwoClubCover:
    """Label sets of the final components; cost is at most the script length."""
    final = apply_script(g, s, exclusive)
    if not is_two_club_graph(final):
        raise InvalidCoverError("script does not produce a 2-club graph")
    return TwoClubCover(tuple(final_label_sets(final))).canonical()


def two_club_subsets(g: Graph) -> list[int]:
    """Every nonempty vertex set inducing a 2-club, as a mask, largest first."""
    masks = g.masks
    out = [m for m in range(1, 1 << g.n) if _bits.is_two_club_mask(masks, m)]
    out.sort(key=lambda m: (-m.bit_count(), m))
    return out


def min_cover(
    g: Graph, edge_covering: bool = False, size_bound: int = DEFAULT_SIZE_BOUND
) -> tuple[int, TwoClubCover]:
    """Exact minimum-cost cover by iterative deepening on the cost bound.

    Covers are assembled from all 2-club subsets.  The search first covers the
    lowest uncovered vertex, then the lowest edge not yet inside a set, which it
    may also leave uncovered at cost 1 unless ``edge_covering`` is set.
    """
    if g.n > size_bound:
        raise SizeBoundError(f"cover oracle limited to n <= {size_bound}, got {g.n}")
    if g.n == 0:
        return 0, TwoClubCover(())
    family = two_club_subsets(g)
    edges = g.edges()
    edge_bit = {e: 1 << i for i, e in enumerate(edges)}
    inside = {}
    for mask in family:
        got = 0
        for (a, b), bit in edge_bit.items():
            if mask >> a & 1 and mask >> b & 1:
                got |= bit
        inside[mask] = got
    with_vertex = [[m for m in family if m >> v & 1] for v in range(g.n)]
    with_edge = [[m for m in family if inside[m] & bit] for bit in edge_bit.values()]
    full_v = (1 << g.n) - 1
    full_e = (1 << len(edges)) - 1
    chosen: list[int] = []

    def search(covered: int, done_edges: int, cost: int, bound: int) -> bool:
        if cost > bound:
            return False
        if covered != full_v:
            v = _bits.lowest_bit(full_v & ~covered)
            for m in with_vertex[v]:
                if m in chosen:
                    continue
                chosen.append(m)
                extra = (m & covered).bit_count()
                if search(covered | m, done_edges | inside[m], cost + extra, bound):
                    return True
                chosen.pop()
            return False
        open_edges = full_e & ~done_edges
        if not open_edges:
            return True
        if cost + 1 > bound:
            return False
        i = _bits.lowest_bit(open_edges)
        bit = 1 << i
        for m in with_edge[i]:
            if m in chosen:
                continue
            chosen.append(m)
            if search(covered, done_edges | inside[m], cost + m.bit_count(), bound):
                return True
            chosen.pop()
        if not edge_covering:
            return search(covered, done_edges | bit, cost + 1, bound)
        return False

    bound = 0
    while not search(0, 0, 0, bound):
        chosen.clear()
        bound += 1
    cover = TwoClubCover(tuple(frozenset(_bits.iter_bits(m)) for m in chosen))
    return bound, cover


def min_cover_cost(
    g: Graph, edge_covering: bool = False, size_bound: int = DEFAULT_SIZE_BOUND
) -> int:
    return min_cover(g, edge_covering, size_bound)[0]


def format_cover(c: TwoClubCover) -> str:
    return "".join(",".join(str(v + 1) for v in sorted(s)) + "\n" for s in c.sets)


def parse_cover(text: str) -> TwoClubCover:
    sets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("c", "#")):
            continue
        try:
            ids = [int(t) for t in line.split(",")]
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: bad id list {line!r}") from exc
        if any(v < 1 for v in ids):
            raise GraphFormatError(f"line {lineno}: ids are 1-based")
        sets.append(frozenset(v - 1 for v in ids))
    return TwoClubCover(tuple(sets))


def read_cover(path: str | Path) -> TwoClubCover:
    return parse_cover(Path(path).read_text())
