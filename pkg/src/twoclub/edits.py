"""Edge deletions, vertex splits, edit scripts and the script verifier.

A split of ``v`` rewires ``v`` to the ``keep`` side and appends a fresh vertex
(id = current vertex count) adjacent to the ``off`` side.  ``keep | off`` must
equal the current neighbourhood of ``v``; exclusive mode also demands that the
two sides are disjoint.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from . import _bits
from .errors import GraphFormatError, InvalidOperationError
from .graph import Graph, connected_components, is_two_club_graph


class Problem(str, Enum):
    """Which operations a solution may use."""

    SPLITS_ONLY = "2ccvs"
    DELETIONS_AND_SPLITS = "2ccedvs"

    @property
    def allows_deletions(self) -> bool:
        return self is Problem.DELETIONS_AND_SPLITS

    @classmethod
    def parse(cls, value: str | Problem) -> Problem:
        if isinstance(value, Problem):
            return value
        key = value.lower().replace("-", "_")
        aliases = {
            "2ccvs": cls.SPLITS_ONLY,
            "splits_only": cls.SPLITS_ONLY,
            "2ccedvs": cls.DELETIONS_AND_SPLITS,
            "deletions_and_splits": cls.DELETIONS_AND_SPLITS,
        }
        if key not in aliases:
            raise ValueError(f"unknown problem {value!r}")
        return aliases[key]


@dataclass(frozen=True)
class DeleteEdge:
    u: int
    v: int

    def __post_init__(self) -> None:
        if self.u > self.v:
            a, b = self.v, self.u
            object.__setattr__(self, "u", a)
            object.__setattr__(self, "v", b)


@dataclass(frozen=True)
class Split:
    """Split ``v``: it keeps ``keep``; a new vertex takes ``off``."""

    v: int
    keep: frozenset[int]
    off: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "keep", frozenset(self.keep))
        object.__setattr__(self, "off", frozenset(self.off))

    @property
    def is_exclusive(self) -> bool:
        return not (self.keep & self.off)


EditOp = DeleteEdge | Split


@dataclass(frozen=True)
class EditScript:
    """Ordered operations; the cost is the number of operations."""

    ops: tuple[EditOp, ...] = ()
    problem: Problem = Problem.DELETIONS_AND_SPLITS

    def __post_init__(self) -> None:
        object.__setattr__(self, "ops", tuple(self.ops))

    def __len__(self) -> int:
        return len(self.ops)

    @property
    def cost(self) -> int:
        return len(self.ops)

    @property
    def deletions(self) -> list[DeleteEdge]:
        return [op for op in self.ops if isinstance(op, DeleteEdge)]

    @property
    def splits(self) -> list[Split]:
        return [op for op in self.ops if isinstance(op, Split)]

    def deletions_first(self) -> bool:
        """True iff no deletion follows a split."""
        seen_split = False
        for op in self.ops:
            if isinstance(op, Split):
                seen_split = True
            elif seen_split:
                return False
        return True

    def then(self, other: EditScript) -> EditScript:
        return EditScript(self.ops + other.ops, self.problem)


class WorkingGraph:
    """Mutable adjacency used to replay or build scripts in linear time.

    Every successful operation is appended to :attr:`ops`.
    """

    def __init__(self, g: Graph) -> None:
        self.adj: list[set[int]] = [set(s) for s in g.adjacency]
        self.labels: list[int] = list(g.labels)
        self.ops: list[EditOp] = []

    @property
    def n(self) -> int:
        return len(self.adj)

    def delete(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and v in self.adj[u]):
            raise InvalidOperationError(f"no edge {u}-{v} to delete")
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.ops.append(DeleteEdge(u, v))

    def split(
        self, v: int, keep: Iterable[int], off: Iterable[int], exclusive: bool = False
    ) -> int:
        """Apply a split and return the id of the new copy."""
        if not 0 <= v < self.n:
            raise InvalidOperationError(f"cannot split missing vertex {v}")
        keep, off = frozenset(keep), frozenset(off)
        nbrs = self.adj[v]
        if keep | off != nbrs:
            raise InvalidOperationError(
                f"split of {v}: keep|off must equal N({v})={sorted(nbrs)}"
            )
        if exclusive and keep & off:
            raise InvalidOperationError(f"split of {v}: sides overlap in exclusive mode")
        new = self.n
        for w in nbrs - keep:
            self.adj[w].discard(v)
        for w in off:
            self.adj[w].add(new)
        self.adj[v] = set(keep)
        self.adj.append(set(off))
        self.labels.append(self.labels[v])
        self.ops.append(Split(v, keep, off))
        return new

    def apply(self, op: EditOp, exclusive: bool = False) -> int | None:
        if isinstance(op, DeleteEdge):
            self.delete(op.u, op.v)
            return None
        return self.split(op.v, op.keep, op.off, exclusive)

    def masks(self) -> list[int]:
        return [_bits.to_mask(s) for s in self.adj]

    def to_graph(self) -> Graph:
        return Graph(self.n, tuple(frozenset(s) for s in self.adj), tuple(self.labels))

    def script(self, problem: Problem = Problem.DELETIONS_AND_SPLITS) -> EditScript:
        return EditScript(tuple(self.ops), problem)


def apply_op(g: Graph, op: EditOp, exclusive: bool = False) -> Graph:
    work = WorkingGraph(g)
    work.apply(op, exclusive)
    return work.to_graph()


def apply_script(g: Graph, s: EditScript, exclusive: bool = False) -> Graph:
    """Fold the operations over ``g``; errors carry the failing op index."""
    work = WorkingGraph(g)
    for i, op in enumerate(s.ops):
        try:
            work.apply(op, exclusive)
        except InvalidOperationError as exc:
            raise InvalidOperationError(str(exc), index=i) from None
    return work.to_graph()


@dataclass
class VerifyReport:
    """Outcome of :func:`verify_script`; ``ok`` summarises every check."""

    ops_valid: bool
    cost: int
    budget: int | None
    within_budget: bool
    operations_allowed: bool
    two_club_graph: bool
    failed_index: int | None = None
    error: str | None = None
    new_ids: list[int] = field(default_factory=list)
    final: Graph | None = None

    @property
    def ok(self) -> bool:
        return (
            self.ops_valid
            and self.within_budget
            and self.operations_allowed
            and self.two_club_graph
        )


def verify_script(
    g: Graph,
    s: EditScript,
    budget: int | None = None,
    exclusive: bool = False,
    problem: Problem | None = None,
) -> VerifyReport:
    """Check that ``s`` applies to ``g`` and yields a 2-club graph within budget.

    Failures are reported as fields, never raised.
    """
    problem = s.problem if problem is None else Problem.parse(problem)
    cost = len(s.ops)
    within = budget is None or cost <= budget
    allowed = problem.allows_deletions or not s.deletions
    work = WorkingGraph(g)
    new_ids: list[int] = []
    for i, op in enumerate(s.ops):
        try:
            new = work.apply(op, exclusive)
        except InvalidOperationError as exc:
            return VerifyReport(False, cost, budget, within, allowed, False, i, str(exc), new_ids)
        if new is not None:
            new_ids.append(new)
    final = work.to_graph()
    return VerifyReport(
        True, cost, budget, within, allowed, is_two_club_graph(final), new_ids=new_ids, final=final
    )


def final_label_sets(g: Graph) -> list[frozenset[int]]:
    """Label set of every component of ``g``, which is typically an edited graph."""
    return [frozenset(g.labels[v] for v in comp) for comp in connected_components(g)]


def replace_deletions_with_splits(g: Graph, s: EditScript) -> EditScript:
    """Rewrite ``s`` so each deletion of u-v becomes two splits.

    The copy of ``u`` gets only ``v``, then the copy of ``v`` gets only that
    copy, which leaves an isolated edge behind.  The result is splits-only and
    has one extra operation per deletion.
    """
    work = WorkingGraph(g)
    to_new = list(range(g.n))
    for op in s.ops:
        if isinstance(op, DeleteEdge):
            a, b = to_new[op.u], to_new[op.v]
            if b not in work.adj[a]:
                raise InvalidOperationError(f"no edge {op.u}-{op.v} to delete")
            ua = work.split(a, work.adj[a] - {b}, {b})
            work.split(b, work.adj[b] - {ua}, {ua})
        else:
            new = work.split(
                to_new[op.v], (to_new[w] for w in op.keep), (to_new[w] for w in op.off)
            )
            to_new.append(new)
    return EditScript(tuple(work.ops), Problem.SPLITS_ONLY)


def combine_component_scripts(
    g: Graph, parts: Sequence[tuple[Sequence[int], EditScript]], problem: Problem
) -> EditScript:
    """Merge scripts solved on separate components of ``g``.

    Each part pairs a component's local-to-global vertex table with a script
    in local ids.  All deletions come first, then the splits part by part, with
    new copy ids renumbered to follow ``g.n`` in emission order.
    """
    dels: list[EditOp] = []
    splits: list[EditOp] = []
    next_id = g.n
    for table, s in parts:
        local = list(table)
        for op in s.ops:
            if isinstance(op, DeleteEdge):
                dels.append(DeleteEdge(local[op.u], local[op.v]))
            else:
                splits.append(Split(local[op.v], frozenset(local[w] for w in op.keep),
                                    frozenset(local[w] for w in op.off)))
                local.append(next_id)
                next_id += 1
    return EditScript(tuple(dels + splits), problem)


def _ids(text: str, lineno: int) -> frozenset[int]:
    text = text.strip()
    if not text:
        return frozenset()
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise GraphFormatError(f"line {lineno}: bad id list {text!r}") from exc
    if any(v < 1 for v in vals):
        raise GraphFormatError(f"line {lineno}: ids are 1-based")
    return frozenset(v - 1 for v in vals)


def format_script(s: EditScript) -> str:
    """One op per line with 1-based ids; new ids are implicit."""
    lines = []
    for op in s.ops:
        if isinstance(op, DeleteEdge):
            lines.append(f"d {op.u + 1} {op.v + 1}")
        else:
            keep = ",".join(str(w + 1) for w in sorted(op.keep))
            off = ",".join(str(w + 1) for w in sorted(op.off))
            lines.append(f"s {op.v + 1} | {keep} | {off}")
    return "".join(line + "\n" for line in lines)


def parse_script(text: str, problem: Problem | str | None = None) -> EditScript:
    """Parse the script format.  Without ``problem`` it is inferred from the ops."""
    ops: list[EditOp] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("c", "#")):
            continue
        if line.startswith("d"):
            parts = line.split()
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'd <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: non-integer id") from exc
            if u < 1 or v < 1:
                raise GraphFormatError(f"line {lineno}: ids are 1-based")
            ops.append(DeleteEdge(u - 1, v - 1))
        elif line.startswith("s"):
            fields = line[1:].split("|")
            if len(fields) != 3:
                raise GraphFormatError(f"line {lineno}: expected 's <v> | <keep> | <off>'")
            try:
                v = int(fields[0])
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: non-integer id") from exc
            if v < 1:
                raise GraphFormatError(f"line {lineno}: ids are 1-based")
            ops.append(Split(v - 1, _ids(fields[1], lineno), _ids(fields[2], lineno)))
        else:
            raise GraphFormatError(f"line {lineno}: unknown op {line!r}")
    if problem is None:
        has_del = any(isinstance(op, DeleteEdge) for op in ops)
        chosen = Problem.DELETIONS_AND_SPLITS if has_del else Problem.SPLITS_ONLY
    else:
        chosen = Problem.parse(problem)
    return EditScript(tuple(ops), chosen)


def read_script(path: str | Path, problem: Problem | str | None = None) -> EditScript:
    return parse_script(Path(path).read_text(), problem)


def write_script(s: EditScript, path: str | Path) -> None:
    Path(path).write_text(format_script(s))


def script(ops: Sequence[EditOp], problem: Problem | str = Problem.DELETIONS_AND_SPLITS) -> EditScript:
    """Convenience constructor accepting a problem name."""
    return EditScript(tuple(ops), Problem.parse(problem))
