"""Exact polynomial algorithms on forests.

``tccvs_tree`` strips a deepest leaf ``v`` with parent ``w``.  All of ``w``'s
children are then leaves, so at most one neighbour of ``w`` (its parent ``p``)
is not a leaf.  If there is one, ``p`` is split so that one copy holds only
``w``, and ``w`` with its leaves leaves the tree.  One split per step is
optimal.

``tccedvs_tree`` evaluates ``t[i, j]``, the optimum on the subtree ``T[i, j]``
induced by postorder numbers ``i..j``, where ``j`` is an ancestor of ``i``.
Let ``x`` be the parent of ``i`` and ``y`` the parent of ``x``.  When
``A = T[i, x]`` is a star centered at ``x`` and ``x != j``, it uses the
cut-vertex recurrence at ``y``:

* degree 2 at ``y``: ``1 + t[y+1, j]`` (or ``1 + t[x+1, z]`` when ``y = j``);
* otherwise: ``min(1 + t[x+1, j], deg-1 + t[y+1, j] + sum t[phi(k), k])``.

That recurrence is undefined on intervals whose bottom vertex is a leaf left
over from a removed subtree while ``x`` still has non-leaf children after it,
and on intervals where ``x = j``.  Such intervals are a path from ``i`` to
``j`` with whole subtrees hanging off it.  They are evaluated by an exact
linear dynamic program over star covers along that path, reusing
precomputed values for the hanging subtrees.
"""

from __future__ import annotations

import bisect
import math
from collections.abc import Iterable
from dataclasses import dataclass

from .cover import realize_cover
from .edits import EditScript, Problem, WorkingGraph, combine_component_scripts
from .errors import NotAForestError
from .graph import Graph, connected_components, induced_subgraph, is_forest

INF = math.inf


@dataclass(frozen=True)
class PostorderTree:
    """Deepest-branch-first postorder numbering of a rooted tree.

    Numbers run from 1 to n.  Arrays indexed by number have a dummy entry at
    index 0.  ``parent[i]`` is 0 for the root, ``phi[i]`` is the smallest
    number in the subtree of ``i``, and ``children[i]`` is increasing.
    """

    tree: Graph
    root: int
    order: tuple[int, ...]
    vertex_at: tuple[int, ...]
    parent: tuple[int, ...]
    phi: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    depth: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.tree.n

    def number(self, v: int) -> int:
        return self.order[v]

    def vertex(self, i: int) -> int:
        return self.vertex_at[i]

    def parent_vertex(self, v: int) -> int | None:
        p = self.parent[self.order[v]]
        return self.vertex_at[p] if p else None

    def children_vertices(self, v: int) -> list[int]:
        return [self.vertex_at[c] for c in self.children[self.order[v]]]

    def min_descendant(self, v: int) -> int:
        return self.vertex_at[self.phi[self.order[v]]]


def _require_tree(t: Graph) -> None:
    if not is_forest(t):
        raise NotAForestError("input graph contains a cycle")
    if len(connected_components(t)) > 1:
        raise NotAForestError("expected a single tree, got a forest")


def build_postorder(t: Graph, root: int) -> PostorderTree:
    """Number vertices in postorder, visiting deeper child subtrees first.

    Ties between equally deep siblings go to the smaller vertex id.
    """
    _require_tree(t)
    n = t.n
    par = [-1] * n
    dep = [0] * n
    seq = [root]
    par[root] = root
    for v in seq:
        for w in sorted(t.adjacency[v]):
            if par[w] == -1:
                par[w] = v
                dep[w] = dep[v] + 1
                seq.append(w)
    height = [0] * n
    for v in reversed(seq):
        if v != root:
            height[par[v]] = max(height[par[v]], height[v] + 1)
    kids = [[] for _ in range(n)]
    for v in seq[1:]:
        kids[par[v]].append(v)
    for v in range(n):
        kids[v].sort(key=lambda w: (-height[w], w))
    order = [0] * n
    vertex_at = [0] * (n + 1)
    counter = 0
    stack: list[tuple[int, int]] = [(root, 0)]
    while stack:
        v, idx = stack.pop()
        if idx < len(kids[v]):
            stack.append((v, idx + 1))
            stack.append((kids[v][idx], 0))
        else:
            counter += 1
            order[v] = counter
            vertex_at[counter] = v
    parent = [0] * (n + 1)
    phi = list(range(n + 1))
    depth = [0] * (n + 1)
    children: list[tuple[int, ...]] = [()] * (n + 1)
    for v in range(n):
        i = order[v]
        depth[i] = dep[v]
        parent[i] = order[par[v]] if v != root else 0
        children[i] = tuple(order[w] for w in kids[v])
    for i in range(1, n + 1):
        if children[i]:
            phi[i] = phi[children[i][0]]
    return PostorderTree(t, root, tuple(order), tuple(vertex_at), tuple(parent),
                         tuple(phi), tuple(children), tuple(depth))


def _components(t: Graph) -> list[tuple[Graph, list[int]]]:
    if not is_forest(t):
        raise NotAForestError("input graph contains a cycle")
    return [induced_subgraph(t, comp) for comp in connected_components(t)]


def _solve_forest(t: Graph, solver, problem: Problem, root: int | None) -> tuple[int, EditScript]:
    parts = []
    total = 0
    for sub, table in _components(t):
        local_root = table.index(root) if root is not None and root in table else 0
        value, s = solver(sub, local_root)
        total += value
        parts.append((table, s))
    if len(parts) == 1:
        return total, EditScript(parts[0][1].ops, problem)
    return total, combine_component_scripts(t, parts, problem)


def tccvs_tree(t: Graph, root: int | None = None) -> tuple[int, EditScript]:
    """Minimum number of splits turning a forest into a 2-club graph, with a witness."""
    return _solve_forest(t, _tccvs_one, Problem.SPLITS_ONLY, root)


def _tccvs_one(t: Graph, root: int) -> tuple[int, EditScript]:
    n = t.n
    work = WorkingGraph(t)
    if n <= 2:
        return 0, work.script(Problem.SPLITS_ONLY)
    par = [-1] * n
    dep = [0] * n
    seq = [root]
    par[root] = root
    for v in seq:
        for w in t.adjacency[v]:
            if par[w] == -1:
                par[w] = v
                dep[w] = dep[v] + 1
                seq.append(w)
    kids: list[set[int]] = [set() for _ in range(n)]
    for v in seq[1:]:
        kids[par[v]].add(v)
    deg = [len(s) for s in t.adjacency]
    alive = [True] * n
    splits = 0
    for v in sorted(range(n), key=lambda z: (-dep[z], z)):
        if not alive[v] or v == root:
            continue
        w = par[v]
        p = par[w] if w != root else None
        if p is not None and deg[p] >= 2:
            work.split(p, work.adj[p] - {w}, {w}, exclusive=True)
            splits += 1
            deg[p] -= 1
            kids[p].discard(w)
            if deg[p] == 0:
                alive[p] = False
        elif p is not None:
            alive[p] = False
        alive[w] = False
        for c in kids[w]:
            alive[c] = False
    return splits, work.script(Problem.SPLITS_ONLY)


def _leaf_values() -> tuple[float, float, float, float]:
    # Index 2*c + b: c = vertex is a star center, b = vertex joins its parent's star.
    return (INF, 0, 0, 1)


def _child_options(gu: tuple[float, ...], cv: int) -> list[tuple[float, int, int, int]]:
    """(cost, c_u, a_u, b_u) for a child given whether its parent is a center.

    ``a_u``: the child's star contains the parent; ``b_u``: the parent's star
    contains the child.  The cost covers the child's subtree, the edge to the
    parent when left uncovered, and the extra membership ``a_u`` adds to the
    parent.
    """
    out = []
    for cu in (0, 1):
        for au in ((0, 1) if cu else (0,)):
            for bu in ((0, 1) if cv else (0,)):
                out.append((gu[2 * cu + bu] + (0 if au or bu else 1) + au, cu, au, bu))
    return out


def _combine(child_values: list[tuple[float, ...]]) -> tuple[float, float, float, float]:
    out = []
    for c in (0, 1):
        best_total = 0
        penalty = INF
        for gu in child_values:
            opts = _child_options(gu, c)
            best = min(o[0] for o in opts)
            best_total += best
            penalty = min(penalty, min(o[0] for o in opts if o[2]) - best)
        for b in (0, 1):
            if c + b == 0:
                out.append(best_total - 1 + penalty if child_values else INF)
            else:
                out.append(c + b - 1 + best_total)
    return tuple(out)


class _IntervalSolver:
    """Memoized ``t[i, j]`` with choice records for witness reconstruction."""

    def __init__(self, pt: PostorderTree) -> None:
        self.pt = pt
        n = pt.n
        self.full: list[tuple[float, ...]] = [()] * (n + 1)
        for i in range(1, n + 1):
            kids = pt.children[i]
            self.full[i] = _combine([self.full[c] for c in kids]) if kids else _leaf_values()
        self._build_rmq()
        self.memo: dict[tuple[int, int], float] = {}
        self.choice: dict[tuple[int, int], tuple] = {}
        self.fallbacks = 0

    def _build_rmq(self) -> None:
        depth = self.pt.depth
        table = [list(depth)]
        span = 1
        while 2 * span <= len(depth):
            prev = table[-1]
            table.append([max(prev[k], prev[k + span]) for k in range(len(prev) - span)])
            span *= 2
        self.rmq = table

    def _max_depth(self, i: int, j: int) -> int:
        level = (j - i + 1).bit_length() - 1
        row = self.rmq[level]
        return max(row[i], row[j - (1 << level) + 1])

    def later_children(self, v: int, after: int) -> tuple[int, ...]:
        """Children of ``v`` numbered above ``after``."""
        kids = self.pt.children[v]
        return kids[bisect.bisect_right(kids, after):]

    def is_star(self, i: int, j: int) -> bool:
        height = self._max_depth(i, j) - self.pt.depth[j]
        if height <= 1:
            return True
        return height == 2 and len(self.later_children(j, i - 1)) == 1

    def plan(self, i: int, j: int) -> tuple:
        """Classify the interval and list the sub-intervals it depends on."""
        pt = self.pt
        if i > j or self.is_star(i, j):
            return ("club", [])
        x = pt.parent[i]
        if x == j or any(pt.phi[k] != k for k in self.later_children(x, i)):
            return ("spine", [])
        y = pt.parent[x]
        later = self.later_children(y, x)
        degree = 1 + len(later) + (1 if y != j else 0)
        if degree == 2:
            if y != j:
                return ("bridge", [(y + 1, j)], y, pt.parent[y])
            z = later[0]
            return ("bridge", [(x + 1, z)], y, z)
        rest = [(y + 1, j)] if y != j else []
        rest += [(pt.phi[k], k) for k in later]
        return ("cut", [(x + 1, j)] + rest, x, y, later, degree)

    def solve(self, i: int, j: int) -> float:
        stack = [(i, j)]
        while stack:
            key = stack[-1]
            if key in self.memo:
                stack.pop()
                continue
            plan = self.choice.get(key)
            if plan is None:
                plan = self.plan(*key)
                self.choice[key] = plan
            pending = [d for d in plan[1] if d not in self.memo]
            if pending:
                stack.extend(pending)
                continue
            stack.pop()
            self.memo[key] = self._evaluate(key, plan)
        return self.memo[(i, j)]

    def _evaluate(self, key: tuple[int, int], plan: tuple) -> float:
        kind = plan[0]
        memo = self.memo
        if kind == "club":
            return 0
        if kind == "spine":
            self.fallbacks += 1
            values, _ = self.spine_values(*key)
            return min(values[-1][0], values[-1][2])
        if kind == "bridge":
            return 1 + memo[plan[1][0]]
        deps, degree = plan[1], plan[5]
        split_cost = 1 + memo[deps[0]]
        delete_cost = degree - 1 + sum(memo[d] for d in deps[1:])
        if delete_cost < split_cost:
            self.choice[key] = plan + ("delete",)
            return delete_cost
        self.choice[key] = plan + ("split",)
        return split_cost

    def spine(self, i: int, j: int) -> list[int]:
        out = [i]
        while out[-1] != j:
            out.append(self.pt.parent[out[-1]])
        return out

    def spine_values(self, i: int, j: int) -> tuple[list[tuple[float, ...]], list[int]]:
        """Star-cover DP values for each vertex on the path from ``i`` up to ``j``."""
        path = self.spine(i, j)
        values = [_leaf_values()]
        for below, s in zip(path, path[1:]):
            kids = [values[-1]] + [self.full[c] for c in self.later_children(s, below)]
            values.append(_combine(kids))
        return values, path

    def spine_cover(self, i: int, j: int) -> list[frozenset[int]]:
        """Optimal star cover of ``T[i, j]`` as sets of postorder numbers."""
        values, path = self.spine_values(i, j)
        on_path = {s: values[pos] for pos, s in enumerate(path)}
        below = {s: path[pos - 1] for pos, s in enumerate(path) if pos}
        top = values[-1]
        c_top = 0 if top[0] <= top[2] else 1
        centers: dict[int, set[int]] = {}
        stack = [(j, c_top, 0)]
        joined_parent: dict[int, bool] = {}
        while stack:
            v, c, b = stack.pop()
            if c:
                centers.setdefault(v, {v})
            if v in on_path:
                kids = ([below[v]] if v in below else []) + list(
                    self.later_children(v, below[v]) if v in below else ())
            else:
                kids = list(self.pt.children[v])
            kid_values = [on_path.get(u, self.full[u]) if u in on_path else self.full[u]
                          for u in kids]
            picks = []
            for gu in kid_values:
                opts = _child_options(gu, c)
                picks.append(min(opts))
            if c + b == 0 and not any(p[2] for p in picks):
                best_gain = None
                for idx, gu in enumerate(kid_values):
                    opts = _child_options(gu, c)
                    forced = min(o for o in opts if o[2])
                    gain = forced[0] - picks[idx][0]
                    if best_gain is None or gain < best_gain[0]:
                        best_gain = (gain, idx, forced)
                picks[best_gain[1]] = best_gain[2]
            for u, (_, cu, au, bu) in zip(kids, picks):
                if bu:
                    centers.setdefault(v, {v}).add(u)
                if au:
                    centers.setdefault(u, {u}).add(v)
                joined_parent[u] = bool(au)
                stack.append((u, cu, bu))
        return [frozenset(s) for _, s in sorted(centers.items())]


def tccedvs_tree(t: Graph, root: int | None = None) -> tuple[int, EditScript]:
    """Minimum deletions plus splits turning a forest into a 2-club graph, with a witness.

    ``root`` picks the root of the tree containing it; other trees are rooted
    at their smallest vertex.
    """
    return _solve_forest(t, _tccedvs_one, Problem.DELETIONS_AND_SPLITS, root)


def interval_solver(t: Graph, root: int = 0) -> _IntervalSolver:
    """Expose the interval table for inspection and tests."""
    return _IntervalSolver(build_postorder(t, root))


def _tccedvs_one(t: Graph, root: int) -> tuple[int, EditScript]:
    pt = build_postorder(t, root)
    solver = _IntervalSolver(pt)
    n = pt.n
    value = solver.solve(1, n)
    work = WorkingGraph(t)
    vx = pt.vertex_at
    stack = [(1, n)]
    while stack:
        key = stack.pop()
        plan = solver.choice[key]
        kind = plan[0]
        if kind == "club":
            continue
        if kind == "spine":
            sets = [frozenset(vx[i] for i in s) for s in solver.spine_cover(*key)]
            realize_cover(work, sets)
            continue
        if kind == "bridge":
            _, deps, y, z = plan
            work.delete(vx[y], vx[z])
            stack.append(deps[0])
            continue
        _, deps, x, y, later, _, pick = plan
        if pick == "split":
            vy = vx[y]
            work.split(vy, work.adj[vy] - {vx[x]}, {vx[x]}, exclusive=True)
            stack.append(deps[0])
        else:
            if y != key[1]:
                work.delete(vx[y], vx[pt.parent[y]])
            for k in later:
                work.delete(vx[y], vx[k])
            stack.extend(reversed(deps[1:]))
    result = work.script(Problem.DELETIONS_AND_SPLITS)
    if len(result) != value:
        raise AssertionError(f"witness length {len(result)} differs from value {value}")
    return int(value), result


def star_cover_value(t: Graph, root: int = 0) -> int:
    """Same optimum via the star-cover dynamic program on the whole tree."""
    pt = build_postorder(t, root)
    solver = _IntervalSolver(pt)
    top = solver.full[pt.n]
    return int(min(top[0], top[2]))


def remove_leaf_and_neighbor(t: Graph, v: int) -> tuple[Graph, int]:
    """``T - {v, w}`` for a leaf ``v`` with neighbour ``w``, and the count of
    non-leaf neighbours of ``w``."""
    if t.degree(v) != 1:
        raise ValueError(f"vertex {v} is not a leaf")
    (w,) = t.adjacency[v]
    k = sum(1 for z in t.adjacency[w] if t.degree(z) > 1)
    sub, _ = induced_subgraph(t, (z for z in range(t.n) if z not in (v, w)))
    return sub, k


def leaves(t: Graph) -> Iterable[int]:
    return (v for v in range(t.n) if t.degree(v) == 1)
