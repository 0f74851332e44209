"""3-SAT reductions to both problems, and witnesses from satisfying assignments.

Each variable ``V`` occurring ``a(V)`` times becomes a cycle ``v_1..v_{6a(V)}``
(1-based positions, indices taken modulo the cycle length).  Its ``j``-th
occurrence is represented by ``v_{6(j-1)+1}`` when positive and
``v_{6(j-1)+2}`` when negative.  The splits-only instance joins the three
literal vertices of each clause into a triangle (budget ``11M``).  The
deletion instance instead attaches them to a new clause vertex (budget ``8M``).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .edits import EditScript, Problem, WorkingGraph
from .errors import FormulaError, GraphFormatError
from .graph import Graph

Clause = tuple[int, int, int]


@dataclass(frozen=True)
class CnfFormula:
    """3-CNF over variables ``1..num_vars``; literals are signed ints.

    ``occurrences[v]`` lists the indices of the clauses containing ``v`` in the
    order used for the gadget layout.
    """

    num_vars: int
    clauses: tuple[Clause, ...]
    occurrences: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clauses = tuple(tuple(c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if not clauses:
            raise FormulaError("formula has no clauses")
        natural: dict[int, list[int]] = {}
        for i, clause in enumerate(clauses):
            if len(clause) != 3:
                raise FormulaError(f"clause {i + 1} does not have exactly three literals")
            variables = [abs(lit) for lit in clause]
            if any(lit == 0 or abs(lit) > self.num_vars for lit in clause):
                raise FormulaError(f"clause {i + 1} has a literal outside 1..{self.num_vars}")
            if len(set(variables)) != 3:
                raise FormulaError(f"clause {i + 1} repeats a variable")
            for var in variables:
                natural.setdefault(var, []).append(i)
        occ = dict(self.occurrences) if self.occurrences else {}
        for var, idx in natural.items():
            given = tuple(occ.get(var, idx))
            if sorted(given) != idx:
                raise FormulaError(f"occurrence list of variable {var} does not match its clauses")
            occ[var] = given
        if set(occ) != set(natural):
            raise FormulaError("occurrence lists name variables absent from the clauses")
        object.__setattr__(self, "occurrences", {v: occ[v] for v in sorted(occ)})

    @classmethod
    def from_clauses(cls, clauses: Iterable[Sequence[int]], num_vars: int | None = None) -> CnfFormula:
        clauses = [tuple(c) for c in clauses]
        if num_vars is None:
            num_vars = max((abs(lit) for c in clauses for lit in c), default=0)
        return cls(num_vars, tuple(clauses))

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def variables(self) -> list[int]:
        return list(self.occurrences)

    def a(self, var: int) -> int:
        return len(self.occurrences.get(var, ()))

    def sign(self, var: int, clause_index: int) -> bool:
        """True when ``var`` occurs positively in the given clause."""
        for lit in self.clauses[clause_index]:
            if abs(lit) == var:
                return lit > 0
        raise FormulaError(f"variable {var} not in clause {clause_index + 1}")

    def occurrence_signs(self, var: int) -> list[bool]:
        return [self.sign(var, c) for c in self.occurrences[var]]

    def is_satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return all(any(assignment[abs(lit)] == (lit > 0) for lit in c) for c in self.clauses)

    def with_occurrences(self, occurrences: Mapping[int, Sequence[int]]) -> CnfFormula:
        merged = dict(self.occurrences)
        merged.update({v: tuple(o) for v, o in occurrences.items()})
        return CnfFormula(self.num_vars, self.clauses, merged)


@dataclass(frozen=True)
class ReductionLayout:
    """Where each gadget vertex lives in a generated instance (0-based ids)."""

    problem: Problem
    k: int
    cycles: Mapping[int, tuple[int, ...]]
    literal_vertices: tuple[tuple[int, int, int], ...]
    clause_vertices: tuple[int, ...] = ()

    def cycle_vertex(self, var: int, position: int) -> int:
        """Vertex ``v_position`` of the variable's cycle (1-based, taken cyclically)."""
        cyc = self.cycles[var]
        return cyc[(position - 1) % len(cyc)]


def literal_position(f: CnfFormula, var: int, clause_index: int) -> int:
    """1-based cycle position representing ``var`` in the given clause."""
    j = f.occurrences[var].index(clause_index) + 1
    return 6 * (j - 1) + (1 if f.sign(var, clause_index) else 2)


def _cycles(f: CnfFormula) -> tuple[dict[int, tuple[int, ...]], list[tuple[int, int]], int]:
    cycles: dict[int, tuple[int, ...]] = {}
    edges: list[tuple[int, int]] = []
    nxt = 0
    for var in f.variables:
        length = 6 * f.a(var)
        ids = tuple(range(nxt, nxt + length))
        cycles[var] = ids
        edges.extend((ids[i], ids[(i + 1) % length]) for i in range(length))
        nxt += length
    return cycles, edges, nxt


def _literal_vertices(f: CnfFormula, cycles: Mapping[int, tuple[int, ...]]) -> tuple[tuple[int, int, int], ...]:
    out = []
    for i, clause in enumerate(f.clauses):
        out.append(tuple(cycles[abs(lit)][literal_position(f, abs(lit), i) - 1] for lit in clause))
    return tuple(out)


def build_2ccvs_instance(f: CnfFormula) -> tuple[Graph, int, ReductionLayout]:
    """Variable cycles plus one triangle per clause; budget ``11M``, max degree 4."""
    cycles, edges, n = _cycles(f)
    lits = _literal_vertices(f, cycles)
    for a, b, c in lits:
        edges += [(a, b), (b, c), (a, c)]
    g = Graph.from_edges(n, edges)
    k = 11 * f.m
    if g.max_degree() > 4:
        raise AssertionError("splits-only instance exceeds degree 4")
    return g, k, ReductionLayout(Problem.SPLITS_ONLY, k, cycles, lits)


def build_2ccedvs_instance(f: CnfFormula) -> tuple[Graph, int, ReductionLayout]:
    """Variable cycles plus a clause vertex per clause; budget ``8M``, max degree 3."""
    cycles, edges, n = _cycles(f)
    lits = _literal_vertices(f, cycles)
    clause_ids = tuple(range(n, n + f.m))
    for c, trio in zip(clause_ids, lits):
        edges += [(c, t) for t in trio]
    g = Graph.from_edges(n + f.m, edges)
    k = 8 * f.m
    if g.max_degree() > 3:
        raise AssertionError("deletion instance exceeds degree 3")
    return g, k, ReductionLayout(Problem.DELETIONS_AND_SPLITS, k, cycles, lits, clause_ids)


def build_instance(f: CnfFormula, problem: Problem | str) -> tuple[Graph, int, ReductionLayout]:
    problem = Problem.parse(problem)
    if problem is Problem.SPLITS_ONLY:
        return build_2ccvs_instance(f)
    return build_2ccedvs_instance(f)


def normalize_assignment(f: CnfFormula, assignment: Mapping[int, bool] | Iterable[int]) -> dict[int, bool]:
    """Accept a ``var -> bool`` map or signed literals; every used variable must be set."""
    if isinstance(assignment, Mapping):
        values = {int(v): bool(b) for v, b in assignment.items()}
    else:
        values = {}
        for lit in assignment:
            if lit == 0:
                continue
            if abs(lit) in values and values[abs(lit)] != (lit > 0):
                raise FormulaError(f"variable {abs(lit)} assigned both ways")
            values[abs(lit)] = lit > 0
    missing = [v for v in f.variables if v not in values]
    if missing:
        raise FormulaError(f"variables {missing} are unassigned")
    return values


def _satisfier(f: CnfFormula, values: Mapping[int, bool], i: int) -> int:
    for pos, lit in enumerate(f.clauses[i]):
        if values[abs(lit)] == (lit > 0):
            return pos
    raise FormulaError(f"clause {i + 1} is not satisfied")


def witness_from_assignment(
    f: CnfFormula, assignment: Mapping[int, bool] | Iterable[int], problem: Problem | str
) -> EditScript:
    """Script of length exactly ``11M`` or ``8M`` solving the generated instance."""
    problem = Problem.parse(problem)
    values = normalize_assignment(f, assignment)
    if not f.is_satisfied_by(values):
        raise FormulaError("assignment does not satisfy the formula")
    g, k, layout = build_instance(f, problem)
    work = WorkingGraph(g)
    if problem is Problem.SPLITS_ONLY:
        _split_witness(f, values, layout, work)
    else:
        _deletion_witness(f, values, layout, work)
    result = work.script(problem)
    if len(result) != k:
        raise AssertionError(f"witness has {len(result)} operations, expected {k}")
    return result


def _split_witness(
    f: CnfFormula, values: Mapping[int, bool], layout: ReductionLayout, work: WorkingGraph
) -> None:
    # Cut each cycle into paths of three vertices: split every second vertex,
    # choosing the parity that leaves true literal vertices as path centers.
    # The kept side also takes any clause edges.
    for var in f.variables:
        length = len(layout.cycles[var])
        start = 2 if values[var] else 3
        for t in range(start, start + length, 2):
            s = layout.cycle_vertex(var, t)
            nxt = layout.cycle_vertex(var, t + 1)
            work.split(s, work.adj[s] - {nxt}, {nxt}, exclusive=True)
    # In each clause the chosen true literal stays whole and serves as a hub.
    # The other two literal vertices are split so their clause edges move to a copy.
    for i, trio in enumerate(layout.literal_vertices):
        keep_pos = _satisfier(f, values, i)
        for pos, vertex in enumerate(trio):
            if pos == keep_pos:
                continue
            own = set(layout.cycles[abs(f.clauses[i][pos])])
            cycle_side = {w for w in work.adj[vertex] if work.labels[w] in own}
            work.split(vertex, cycle_side, work.adj[vertex] - cycle_side, exclusive=True)


def deletion_phase(positive_literal: bool) -> int:
    """Residue ``r`` (mod 3) of the cycle edges ``v_i - v_{i+1}`` to delete.

    Deleting every edge with ``i = r (mod 3)`` leaves paths on three vertices
    whose centers sit at positions ``r + 2 (mod 3)``.  True variables need the
    positive literal positions (``1 mod 3``) centered; false ones need the
    negative positions (``2 mod 3``).
    """
    center = 1 if positive_literal else 2
    return (center - 2) % 3


def _deletion_witness(
    f: CnfFormula, values: Mapping[int, bool], layout: ReductionLayout, work: WorkingGraph
) -> None:
    for var in f.variables:
        length = len(layout.cycles[var])
        r = deletion_phase(values[var])
        for i in range(1, length + 1):
            if i % 3 == r:
                work.delete(layout.cycle_vertex(var, i), layout.cycle_vertex(var, i + 1))
    for i, (c, trio) in enumerate(zip(layout.clause_vertices, layout.literal_vertices)):
        keep_pos = _satisfier(f, values, i)
        for pos, vertex in enumerate(trio):
            if pos != keep_pos:
                work.delete(c, vertex)


def check_max3sat4_ordering(f: CnfFormula) -> bool:
    """True iff every variable with two positive and two negative occurrences alternates +,-,+,-."""
    ok = True
    for var in f.variables:
        signs = f.occurrence_signs(var)
        if len(signs) > 4:
            raise FormulaError(f"variable {var} occurs {len(signs)} times (limit 4)")
        if len(signs) == 4 and sum(signs) == 2 and signs != [True, False, True, False]:
            ok = False
    return ok


def reorder_for_max3sat4(f: CnfFormula) -> CnfFormula:
    """Reorder occurrence lists so :func:`check_max3sat4_ordering` holds."""
    check_max3sat4_ordering(f)
    new = {}
    for var in f.variables:
        occ = f.occurrences[var]
        signs = f.occurrence_signs(var)
        if len(occ) == 4 and sum(signs) == 2:
            pos = [c for c, s in zip(occ, signs) if s]
            neg = [c for c, s in zip(occ, signs) if not s]
            new[var] = (pos[0], neg[0], pos[1], neg[1])
    return f.with_occurrences(new)


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF; clause lines end with 0 and may span lines."""
    num_vars = num_clauses = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise GraphFormatError(f"line {lineno}: expected 'p cnf <vars> <clauses>'")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: non-integer header") from exc
            continue
        if num_vars is None:
            raise GraphFormatError(f"line {lineno}: clause before header")
        try:
            lits = [int(t) for t in line.split()]
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: non-integer literal") from exc
        for lit in lits:
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if num_vars is None:
        raise GraphFormatError("missing 'p cnf' header")
    if current:
        raise GraphFormatError("last clause is not terminated by 0")
    if len(clauses) != num_clauses:
        raise GraphFormatError(f"header declares {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def format_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {f.m}"]
    lines += [" ".join(str(lit) for lit in c) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def read_dimacs(path: str | Path) -> CnfFormula:
    return parse_dimacs(Path(path).read_text())


def parse_assignment(text: str) -> list[int]:
    """Signed literals separated by whitespace; a leading ``v`` and trailing 0 are allowed."""
    lits = []
    for token in text.replace(",", " ").split():
        if token in ("v", "s", "SAT", "SATISFIABLE"):
            continue
        try:
            lits.append(int(token))
        except ValueError as exc:
            raise GraphFormatError(f"bad literal {token!r}") from exc
    return [lit for lit in lits if lit != 0]


def format_layout(layout: ReductionLayout) -> str:
    """Layout sidecar: ``key=value`` header lines, then one record per gadget (1-based ids)."""
    lines = [f"problem={layout.problem.value}", f"k={layout.k}",
             f"variables={len(layout.cycles)}", f"clauses={len(layout.literal_vertices)}"]
    for var, cyc in layout.cycles.items():
        lines.append(f"cycle var={var} first={cyc[0] + 1} length={len(cyc)}")
    for i, trio in enumerate(layout.literal_vertices):
        rec = f"clause index={i + 1} literals={','.join(str(t + 1) for t in trio)}"
        if layout.clause_vertices:
            rec += f" vertex={layout.clause_vertices[i] + 1}"
        lines.append(rec)
    return "\n".join(lines) + "\n"


def satisfying_assignments(f: CnfFormula) -> list[dict[int, bool]]:
    """All satisfying assignments by enumeration; intended for small formulas."""
    variables = f.variables
    out = []
    for bits in range(1 << len(variables)):
        values = {v: bool(bits >> i & 1) for i, v in enumerate(variables)}
        if f.is_satisfied_by(values):
            out.append(values)
    return out
