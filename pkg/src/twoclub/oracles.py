"""Brute-force ground truth: iterative deepening over edit sequences.

The search branches only on operations that touch the first obstruction
x-u-v-y of the current graph: deleting one of its three edges, or splitting
``u`` or ``v`` in every possible way.  Some optimal sequence always starts with
such an operation.  The reason is that the final graph of any script is fixed
by how many copies each vertex gets and which copies are adjacent, and every
ordering of the operations reaches the same final graph.  One ordering
therefore handles this obstruction first.

Nodes are also pruned with a lower bound: a greedy set of obstructions whose
repairing operations are pairwise disjoint.  Each of them needs its own
operation.
"""

from __future__ import annotations

from collections.abc import Iterator
from itertools import product

import networkx as nx

from . import _bits
from .edits import DeleteEdge, EditOp, EditScript, Problem, Split
from .errors import SizeBoundError
from .graph import Graph, from_networkx

DEFAULT_MAX_N = 7
DEFAULT_MAX_K = 5

_KEEP, _OFF, _BOTH = 0, 1, 2


def split_assignments(degree: int, exclusive: bool) -> Iterator[tuple[int, ...]]:
    """Neighbour assignments for one split, up to swapping the two copies.

    Each neighbour goes to the kept vertex, the new copy, or (non-exclusive)
    both.  Assignments leaving a side empty are skipped.  Of each mirrored
    pair only the one whose first one-sided neighbour is kept is produced.
    """
    choices = (_KEEP, _OFF) if exclusive else (_KEEP, _OFF, _BOTH)
    for assign in product(choices, repeat=degree):
        if _OFF not in assign and _BOTH not in assign:
            continue
        if _KEEP not in assign and _BOTH not in assign:
            continue
        first = next((a for a in assign if a != _BOTH), _KEEP)
        if first != _KEEP:
            continue
        yield assign


def obstruction_packing(
    adj: list[int], labels: list[int], deletions: bool, limit: int
) -> int:
    """Greedy count of obstructions with pairwise disjoint repair sets.

    Repairs are taken at label level so copies of one original vertex count
    as the same target.  Counting stops once ``limit`` is exceeded.
    """
    used: set[tuple] = set()
    count = 0
    for x, u, v, y in _bits.all_obstructions(adj):
        lx, lu, lv, ly = labels[x], labels[u], labels[v], labels[y]
        hits = [("s", lu), ("s", lv)]
        if deletions:
            hits += [("d", min(lx, lu), max(lx, lu)), ("d", min(lu, lv), max(lu, lv)),
                     ("d", min(lv, ly), max(lv, ly))]
        if used.isdisjoint(hits):
            used.update(hits)
            count += 1
            if count > limit:
                break
    return count


class _Search:
    def __init__(self, g: Graph, problem: Problem, exclusive: bool, prune: bool) -> None:
        self.deletions = problem.allows_deletions
        self.exclusive = exclusive
        self.prune = prune
        self.adj = list(g.masks)
        self.labels = list(g.labels)
        self.ops: list[EditOp] = []
        self.nodes = 0
        self.seen: dict[tuple, int] = {}

    def run(self, budget: int) -> bool:
        self.seen.clear()
        return self._dfs(budget)

    def _dfs(self, budget: int) -> bool:
        self.nodes += 1
        adj = self.adj
        found = _bits.first_obstruction(adj)
        if found is None:
            return True
        if budget == 0:
            return False
        key = (tuple(adj), tuple(self.labels))
        if self.seen.get(key, -1) >= budget:
            return False
        self.seen[key] = budget
        if self.prune and obstruction_packing(adj, self.labels, self.deletions, budget) > budget:
            return False
        x, u, v, y = found
        if self.deletions:
            for a, b in ((x, u), (u, v), (v, y)):
                adj[a] &= ~(1 << b)
                adj[b] &= ~(1 << a)
                self.ops.append(DeleteEdge(a, b))
                if self._dfs(budget - 1):
                    return True
                self.ops.pop()
                adj[a] |= 1 << b
                adj[b] |= 1 << a
        for w in (u, v):
            if self._try_splits(w, budget):
                return True
        return False

    def _try_splits(self, w: int, budget: int) -> bool:
        adj = self.adj
        saved = adj[w]
        nbrs = list(_bits.iter_bits(saved))
        new = len(adj)
        new_bit = 1 << new
        w_bit = 1 << w
        for assign in split_assignments(len(nbrs), self.exclusive):
            keep = off = 0
            for t, a in zip(nbrs, assign):
                if a != _OFF:
                    keep |= 1 << t
                if a != _KEEP:
                    off |= 1 << t
            for t, a in zip(nbrs, assign):
                if a == _OFF:
                    adj[t] &= ~w_bit
                if a != _KEEP:
                    adj[t] |= new_bit
            adj[w] = keep
            adj.append(off)
            self.labels.append(self.labels[w])
            self.ops.append(
                Split(w, frozenset(_bits.iter_bits(keep)), frozenset(_bits.iter_bits(off)))
            )
            if self._dfs(budget - 1):
                return True
            self.ops.pop()
            self.labels.pop()
            adj.pop()
            adj[w] = saved
            for t in nbrs:
                adj[t] = (adj[t] | w_bit) & ~new_bit
        return False


def iddfs_optimum(
    g: Graph,
    problem: Problem | str,
    kmax: int = DEFAULT_MAX_K,
    exclusive: bool = False,
    max_n: int = DEFAULT_MAX_N,
    max_k: int = DEFAULT_MAX_K,
    prune: bool = True,
    stats: dict | None = None,
) -> tuple[int, EditScript] | None:
    """Least ``k <= kmax`` admitting a script of length ``k``, with a witness.

    Returns ``None`` when no script of length at most ``kmax`` exists.
    ``max_n`` and ``max_k`` guard against accidental huge runs.
    """
    problem = Problem.parse(problem)
    if g.n > max_n:
        raise SizeBoundError(f"IDDFS oracle limited to n <= {max_n}, got {g.n}")
    if kmax > max_k:
        raise SizeBoundError(f"IDDFS oracle limited to kmax <= {max_k}, got {kmax}")
    search = _Search(g, problem, exclusive, prune)
    for k in range(kmax + 1):
        if search.run(k):
            if stats is not None:
                stats["nodes"] = search.nodes
            return k, EditScript(tuple(search.ops), problem)
    if stats is not None:
        stats["nodes"] = search.nodes
    return None


def catalog_small_graphs(nmax: int, nmin: int = 1) -> Iterator[Graph]:
    """Every connected graph on ``nmin..nmax`` vertices, one per isomorphism class.

    Backed by the networkx graph atlas, which lists all graphs up to seven
    vertices.
    """
    if nmax > 7:
        raise SizeBoundError("the graph atlas covers at most 7 vertices")
    for h in nx.graph_atlas_g():
        k = h.number_of_nodes()
        if k < nmin or k > nmax:
            continue
        if nx.is_connected(h):
            yield from_networkx(h)
