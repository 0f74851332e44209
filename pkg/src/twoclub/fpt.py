"""Fixed-parameter branching on length-3 geodesics, plus the split completion.

:func:`fpt_decide` repeatedly takes the first obstruction x-u-v-y whose two
interior vertices are unmarked.  It either deletes one of its three edges
(deletion problem only) or marks ``u`` or ``v`` for splitting, and each choice
spends one unit of budget.  Once no such obstruction remains, :func:`aux`
decides whether splitting only marked vertices, with the budget left over,
finishes the job.

:func:`aux` works on groups instead of split sequences.  Every component of
``G - S`` ends up in exactly one final component together with all of its
marked neighbours, so a completion is a family of 2-club groups with these
properties:

* each group is a union of whole components plus marked vertices;
* every component lies in exactly one group;
* every marked vertex and every edge between marked vertices lies in some group.

Such a family costs ``sum(multiplicity - 1)`` splits, and
:func:`twoclub.cover.realize_cover` turns it into a script.
:func:`aux_enumerate` is the literal split-sequence enumeration, kept as a
cross-check for small inputs.
"""

from __future__ import annotations

from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from . import _bits
from .cover import realize_cover
from .edits import EditOp, EditScript, Problem, WorkingGraph, combine_component_scripts
from .graph import Graph, connected_components, induced_subgraph

DEFAULT_KMAX = 8


@dataclass
class FptStats:
    """Counters gathered during a solve.

    ``component_excess`` records, per completion attempt, how far the number
    of components of ``G - S`` exceeds ``deletions + |S| + 1``.
    ``witness_components`` is that component count for the successful attempt.
    """

    nodes: int = 0
    aux_calls: int = 0
    aux_nodes: int = 0
    pruned: int = 0
    component_excess: list[int] = field(default_factory=list)
    witness_components: int | None = None

    def merge(self, other: FptStats) -> None:
        self.nodes += other.nodes
        self.aux_calls += other.aux_calls
        self.aux_nodes += other.aux_nodes
        self.pruned += other.pruned
        self.component_excess.extend(other.component_excess)
        if other.witness_components is not None:
            self.witness_components = other.witness_components


@dataclass
class BranchState:
    """Graph after the deletions so far, the marked set and the unspent budget."""

    adj: list[int]
    marked: int
    k_remaining: int
    deletions: list[tuple[int, int]]

    def budget_consistent(self, k: int) -> bool:
        return len(self.deletions) + self.marked.bit_count() + self.k_remaining == k


def _packing(adj: list[int], marked: int, deletions: bool, limit: int) -> int:
    """Greedy count of open obstructions whose branching choices are disjoint."""
    used: set[tuple] = set()
    count = 0
    for x, u, v, y in _bits.all_obstructions(adj, marked):
        hits = [("m", u), ("m", v)]
        if deletions:
            hits += [("d", min(x, u), max(x, u)), ("d", min(u, v), max(u, v)),
                     ("d", min(v, y), max(v, y))]
        if used.isdisjoint(hits):
            used.update(hits)
            count += 1
            if count > limit:
                break
    return count


class _Groups:
    """Search for a group family completing a marked graph; see module docs."""

    def __init__(self, adj: list[int], marked: int, budget: int, exclusive: bool) -> None:
        self.adj = adj
        self.marked = marked
        self.budget = budget
        self.exclusive = exclusive
        self.n = len(adj)
        everything = (1 << self.n) - 1
        self.comps = _bits.component_masks(adj, everything & ~marked)
        self.attach = [_bits.union_neighbors(adj, c) & marked for c in self.comps]
        self.s_list = list(_bits.iter_bits(marked))
        self.ss_edges = [
            (a, b) for a in self.s_list for b in _bits.iter_bits(adj[a] & marked) if a < b
        ]
        self.club_cache: dict[int, bool] = {}
        self.nodes = 0
        p = len(self.comps)
        # Two components can share a group only if each vertex of one reaches
        # each vertex of the other through a common marked neighbour.
        joinable = [0] * p
        for i in range(p):
            for j in range(i + 1, p):
                if self._compatible(self.comps[i], self.comps[j]):
                    joinable[i] |= 1 << j
                    joinable[j] |= 1 << i
        self.joinable = joinable
        self.groups: list[int] = []
        self.owners: dict[tuple[int, int], int] | None = None

    def _compatible(self, a: int, b: int) -> bool:
        adj = self.adj
        for x in _bits.iter_bits(a):
            nx_ = adj[x] & self.marked
            for y in _bits.iter_bits(b):
                if not nx_ & adj[y]:
                    return False
        return True

    def _is_club(self, mask: int) -> bool:
        got = self.club_cache.get(mask)
        if got is None:
            got = _bits.is_two_club_mask(self.adj, mask)
            self.club_cache[mask] = got
        return got

    def _component_sets(self, first: int, free: int) -> list[int]:
        """Index sets of components containing ``first``, pairwise joinable, within ``free``."""
        out = []
        pool = free & self.joinable[first] & ~((1 << (first + 1)) - 1)
        stack = [(1 << first, pool)]
        while stack:
            chosen, cand = stack.pop()
            out.append(chosen)
            for j in _bits.iter_bits(cand):
                nxt = cand & self.joinable[j] & ~((1 << (j + 1)) - 1)
                stack.append((chosen | 1 << j, nxt))
        out.sort(key=lambda q: (q.bit_count(), q))
        return out

    def solve(self) -> bool:
        mult = {s: 0 for s in self.s_list}
        return self._dfs(0, mult, 0)

    def _extra_sets(self, need: int) -> list[int]:
        free = self.marked & ~need
        subs = []
        sub = free
        while True:
            subs.append(need | sub)
            if sub == 0:
                break
            sub = (sub - 1) & free
        return subs

    def _dfs(self, assigned: int, mult: dict[int, int], cost: int) -> bool:
        self.nodes += 1
        p = len(self.comps)
        full = (1 << p) - 1
        if assigned != full:
            first = _bits.lowest_bit(full & ~assigned)
            for q in self._component_sets(first, full & ~assigned):
                base = need = 0
                for i in _bits.iter_bits(q):
                    base |= self.comps[i]
                    need |= self.attach[i]
                for r in self._extra_sets(need):
                    if self._try(base | r, r, assigned | q, mult, cost):
                        return True
            return False
        for s in self.s_list:
            if mult[s] == 0:
                for r in self._extra_sets(1 << s):
                    if self._try(r, r, assigned, mult, cost):
                        return True
                return False
        for a, b in self.ss_edges:
            if not any(g >> a & 1 and g >> b & 1 for g in self.groups):
                for r in self._extra_sets((1 << a) | (1 << b)):
                    if self._try(r, r, assigned, mult, cost):
                        return True
                return False
        if self.exclusive:
            return self._assign_owners()
        return True

    def _try(self, group: int, r: int, assigned: int, mult: dict[int, int], cost: int) -> bool:
        if not group or group in self.groups:
            return False
        extra = sum(1 for s in _bits.iter_bits(r) if mult[s])
        if cost + extra > self.budget or not self._is_club(group):
            return False
        for s in _bits.iter_bits(r):
            mult[s] += 1
        self.groups.append(group)
        if self._dfs(assigned, mult, cost + extra):
            return True
        self.groups.pop()
        for s in _bits.iter_bits(r):
            mult[s] -= 1
        return False

    def _assign_owners(self) -> bool:
        """Give every shared marked-marked edge to one group, keeping all groups 2-clubs."""
        groups = self.groups
        base_owner: dict[tuple[int, int], int] = {}
        shared: list[tuple[tuple[int, int], list[int]]] = []
        for a in range(self.n):
            for b in _bits.iter_bits(self.adj[a]):
                if a < b:
                    holders = [j for j, g in enumerate(groups) if g >> a & 1 and g >> b & 1]
                    if len(holders) == 1:
                        base_owner[(a, b)] = holders[0]
                    elif holders:
                        shared.append(((a, b), holders))
        for choice in product(*(h for _, h in shared)):
            owners = dict(base_owner)
            owners.update({e: j for (e, _), j in zip(shared, choice)})
            if all(self._owned_club(j, g, owners) for j, g in enumerate(groups)):
                self.owners = owners
                return True
        return False

    def _owned_club(self, j: int, group: int, owners: dict[tuple[int, int], int]) -> bool:
        owned = [0] * self.n
        for (a, b), o in owners.items():
            if o == j:
                owned[a] |= 1 << b
                owned[b] |= 1 << a
        return _bits.is_two_club_mask(owned, group)


def _aux_masks(
    g: Graph, adj: list[int], marked: int, e: int, exclusive: bool, deletions: Iterable[tuple[int, int]]
) -> tuple[EditScript | None, int]:
    """Completion for a marked state; returns the full script and the search node count."""
    search = _Groups(adj, marked, marked.bit_count() + e, exclusive)
    if not search.solve():
        return None, search.nodes
    work = WorkingGraph(g)
    for a, b in deletions:
        work.delete(a, b)
    sets = [frozenset(_bits.iter_bits(m)) for m in search.groups]
    realize_cover(work, sets, search.owners, exclusive)
    return work.script(), search.nodes


def aux(g: Graph, marked: Iterable[int], e: int, exclusive: bool = False) -> EditScript | None:
    """Split-only completion of ``g`` using at most ``|marked| + e`` splits of marked vertices."""
    mask = _bits.to_mask(marked)
    found, _ = _aux_masks(g, list(g.masks), mask, e, exclusive, ())
    if found is None:
        return None
    return EditScript(found.ops, Problem.SPLITS_ONLY)


def aux_enumerate(
    g: Graph,
    marked: Iterable[int],
    e: int,
    exclusive: bool = False,
    require_all: bool = True,
) -> EditScript | None:
    """Reference completion: enumerate split sequences directly.

    Each step splits a marked vertex or one of its copies.  Every component of
    ``G - S`` touching it is handled as one block, and its other marked
    neighbours are handled one by one.  With ``require_all`` every marked
    vertex must be split at least once.  The search is exponential, so use it
    on tiny inputs only.
    """
    marked = frozenset(marked)
    budget = len(marked) + e
    start = WorkingGraph(g)
    unmarked = [v for v in range(g.n) if v not in marked]
    comp_of: dict[int, int] = {}
    for i, comp in enumerate(connected_components(induced_subgraph(g, unmarked)[0])):
        for local in comp:
            comp_of[unmarked[local]] = i
    choices = (0, 1) if exclusive else (0, 1, 2)

    def dfs(work: WorkingGraph, used: int, split_once: frozenset[int]) -> list[EditOp] | None:
        done = _bits.is_two_club_graph_masks(work.masks())
        if done and (not require_all or split_once >= marked):
            return list(work.ops)
        if used == budget:
            return None
        lineage = [w for w in range(work.n) if work.labels[w] in marked]
        for w in lineage:
            blocks: dict[object, set[int]] = {}
            for t in sorted(work.adj[w]):
                key = ("c", comp_of[t]) if t in comp_of else ("s", t)
                blocks.setdefault(key, set()).add(t)
            parts = list(blocks.values())
            for assign in product(choices, repeat=len(parts)):
                keep = set().union(*(p for p, a in zip(parts, assign) if a != 1))
                off = set().union(*(p for p, a in zip(parts, assign) if a != 0))
                if not keep or not off:
                    continue
                first = next((a for a in assign if a != 2), 0)
                if first != 0:
                    continue
                nxt = WorkingGraph(work.to_graph())
                nxt.ops = list(work.ops)
                nxt.split(w, keep, off, exclusive)
                got = dfs(nxt, used + 1, split_once | {work.labels[w]})
                if got is not None:
                    return got
        return None

    found = dfs(start, 0, frozenset())
    return None if found is None else EditScript(tuple(found), Problem.SPLITS_ONLY)


class _Brancher:
    def __init__(self, g: Graph, problem: Problem, exclusive: bool, prune: bool) -> None:
        self.g = g
        self.deletions = problem.allows_deletions
        self.problem = problem
        self.exclusive = exclusive
        self.prune = prune
        self.stats = FptStats()

    def children(self, state: BranchState) -> list[BranchState]:
        """Branch states for the first open obstruction, in branching order."""
        x, u, v, y = _bits.first_obstruction(state.adj, state.marked)
        out = []
        if self.deletions:
            for a, b in ((x, u), (u, v), (v, y)):
                adj = list(state.adj)
                adj[a] &= ~(1 << b)
                adj[b] &= ~(1 << a)
                out.append(BranchState(adj, state.marked, state.k_remaining - 1,
                                       state.deletions + [(a, b)]))
        for w in (u, v):
            out.append(BranchState(list(state.adj), state.marked | 1 << w,
                                   state.k_remaining - 1, list(state.deletions)))
        return out

    def run(self, state: BranchState) -> EditScript | None:
        self.stats.nodes += 1
        adj, marked, k = state.adj, state.marked, state.k_remaining
        ob = _bits.first_obstruction(adj, marked)
        if ob is None:
            return self._finish(state)
        if k == 0:
            return None
        if self.prune and _packing(adj, marked, self.deletions, k) > k:
            self.stats.pruned += 1
            return None
        x, u, v, y = ob
        if self.deletions:
            for a, b in ((x, u), (u, v), (v, y)):
                adj[a] &= ~(1 << b)
                adj[b] &= ~(1 << a)
                state.deletions.append((a, b))
                state.k_remaining = k - 1
                found = self.run(state)
                state.deletions.pop()
                adj[a] |= 1 << b
                adj[b] |= 1 << a
                state.k_remaining = k
                if found is not None:
                    return found
        for w in (u, v):
            state.marked = marked | 1 << w
            state.k_remaining = k - 1
            found = self.run(state)
            state.marked = marked
            state.k_remaining = k
            if found is not None:
                return found
        return None

    def _finish(self, state: BranchState) -> EditScript | None:
        self.stats.aux_calls += 1
        comps = len(_bits.component_masks(state.adj, ((1 << len(state.adj)) - 1) & ~state.marked))
        excess = comps - (len(state.deletions) + state.marked.bit_count() + 1)
        self.stats.component_excess.append(excess)
        found, nodes = _aux_masks(self.g, state.adj, state.marked, state.k_remaining,
                                  self.exclusive, state.deletions)
        self.stats.aux_nodes += nodes
        if found is None:
            return None
        self.stats.witness_components = comps
        return EditScript(found.ops, self.problem)


def _run_branch(args: tuple) -> tuple[EditScript | None, FptStats]:
    g, problem, exclusive, prune, state = args
    brancher = _Brancher(g, problem, exclusive, prune)
    return brancher.run(state), brancher.stats


def _decide_connected(
    g: Graph, k: int, problem: Problem, exclusive: bool, prune: bool, jobs: int, stats: FptStats
) -> EditScript | None:
    brancher = _Brancher(g, problem, exclusive, prune)
    root = BranchState(list(g.masks), 0, k, [])
    if jobs <= 1 or k == 0 or _bits.first_obstruction(root.adj) is None:
        found = brancher.run(root)
        stats.merge(brancher.stats)
        return found
    stats.nodes += 1
    kids = brancher.children(root)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_run_branch, [(g, problem, exclusive, prune, s) for s in kids]))
    for _, sub in results:
        stats.merge(sub)
    for found, _ in results:
        if found is not None:
            return found
    return None


def _pieces(g: Graph) -> list[tuple[Graph, list[int]]]:
    return [induced_subgraph(g, comp) for comp in connected_components(g)]


def fpt_decide(
    g: Graph,
    k: int,
    problem: Problem | str,
    exclusive: bool = False,
    prune: bool = True,
    jobs: int = 1,
    stats: FptStats | None = None,
) -> EditScript | None:
    """A script of length at most ``k`` making ``g`` a 2-club graph, or ``None``.

    Disconnected graphs are solved per component; the budget is shared.
    """
    problem = Problem.parse(problem)
    stats = stats if stats is not None else FptStats()
    if k < 0:
        return None
    pieces = _pieces(g)
    if len(pieces) <= 1:
        return _decide_connected(g, k, problem, exclusive, prune, jobs, stats)
    parts = []
    left = k
    for sub, table in pieces:
        got = _optimum_connected(sub, problem, left, exclusive, prune, jobs, stats)
        if got is None:
            return None
        left -= got[0]
        parts.append((table, got[1]))
    return combine_component_scripts(g, parts, problem)


def _optimum_connected(
    g: Graph, problem: Problem, kmax: int, exclusive: bool, prune: bool, jobs: int, stats: FptStats
) -> tuple[int, EditScript] | None:
    for k in range(kmax + 1):
        found = _decide_connected(g, k, problem, exclusive, prune, jobs, stats)
        if found is not None:
            return k, found
    return None


def fpt_optimum(
    g: Graph,
    problem: Problem | str,
    kmax: int = DEFAULT_KMAX,
    exclusive: bool = False,
    prune: bool = True,
    jobs: int = 1,
    stats: FptStats | None = None,
) -> tuple[int, EditScript] | None:
    """Least ``k <= kmax`` accepted by :func:`fpt_decide`, with its witness."""
    problem = Problem.parse(problem)
    stats = stats if stats is not None else FptStats()
    parts = []
    total = 0
    for sub, table in _pieces(g):
        got = _optimum_connected(sub, problem, kmax - total, exclusive, prune, jobs, stats)
        if got is None:
            return None
        total += got[0]
        parts.append((table, got[1]))
    if len(parts) == 1:
        return total, parts[0][1]
    return total, combine_component_scripts(g, parts, problem)
