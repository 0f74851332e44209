from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoclub.edits import Problem, WorkingGraph, verify_script
from twoclub.errors import FormulaError, GraphFormatError
from twoclub.fpt import fpt_optimum
from twoclub.generate import random_3cnf
from twoclub.graph import connected_components
from twoclub.reductions import (
    CnfFormula,
    build_2ccedvs_instance,
    build_2ccvs_instance,
    build_instance,
    check_max3sat4_ordering,
    deletion_phase,
    format_dimacs,
    format_layout,
    literal_position,
    parse_assignment,
    parse_dimacs,
    reorder_for_max3sat4,
    satisfying_assignments,
    witness_from_assignment,
)

# (X or Y or Z) and (X or Y or not Z)
TWO_CLAUSES = CnfFormula.from_clauses([(1, 2, 3), (1, 2, -3)])
SINGLE = CnfFormula.from_clauses([(1, 2, 3)])


def satisfiable_formulas(count: int, seed: int) -> list[CnfFormula]:
    out = []
    s = seed
    while len(out) < count:
        m = 1 + s % 4
        f = CnfFormula.from_clauses(random_3cnf(3 + s % 4, m, s))
        if satisfying_assignments(f):
            out.append(f)
        s += 1
    return out


def test_two_clause_split_instance():
    g, k, layout = build_2ccvs_instance(TWO_CLAUSES)
    assert (g.n, k) == (36, 22)
    assert [len(layout.cycles[v]) for v in (1, 2, 3)] == [12, 12, 12]
    positions = [[literal_position(TWO_CLAUSES, abs(lit), i) for lit in c] for i, c in enumerate(TWO_CLAUSES.clauses)]
    assert positions == [[1, 1, 1], [7, 7, 8]]
    for (a, b, c) in layout.literal_vertices:
        assert g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
    assert layout.literal_vertices[1] == tuple(
        layout.cycle_vertex(v, p) for v, p in zip((1, 2, 3), (7, 7, 8))
    )
    assert g.max_degree() <= 4
    assert g.m == 36 + 6


def test_single_clause_split_instance():
    g, k, _ = build_2ccvs_instance(SINGLE)
    assert (g.n, g.m, k) == (18, 21, 11)


def test_two_clause_deletion_instance():
    g, k, layout = build_2ccedvs_instance(TWO_CLAUSES)
    assert (g.n, k) == (38, 16)
    c1, c2 = layout.clause_vertices
    assert (c1, c2) == (36, 37)
    assert set(g.neighbors(c1)) == set(layout.literal_vertices[0])
    assert set(g.neighbors(c2)) == {layout.cycle_vertex(1, 7), layout.cycle_vertex(2, 7), layout.cycle_vertex(3, 8)}
    assert g.max_degree() <= 3


def test_single_clause_deletion_instance():
    g, k, _ = build_2ccedvs_instance(SINGLE)
    assert (g.n, g.m, k) == (19, 21, 8)


@pytest.mark.parametrize(
    "clauses",
    [[(1, 1, 2)], [(1, 2)], [(1, 2, 0)], []],
    ids=["repeated-variable", "two-literals", "zero-literal", "empty"],
)
def test_invalid_formulas(clauses):
    with pytest.raises(FormulaError):
        CnfFormula(3, tuple(clauses))


def test_two_clause_witnesses():
    s = witness_from_assignment(TWO_CLAUSES, {1: True, 2: True, 3: True}, Problem.SPLITS_ONLY)
    g, k, _ = build_2ccvs_instance(TWO_CLAUSES)
    assert len(s) == k == 22 and not s.deletions
    assert verify_script(g, s, budget=k, exclusive=True).ok
    s = witness_from_assignment(TWO_CLAUSES, [1, -2, -3], Problem.DELETIONS_AND_SPLITS)
    g, k, _ = build_2ccedvs_instance(TWO_CLAUSES)
    assert len(s) == k == 16
    assert verify_script(g, s, budget=k, exclusive=True).ok


def test_unsatisfying_assignment_rejected():
    with pytest.raises(FormulaError):
        witness_from_assignment(TWO_CLAUSES, [-1, -2, 3], Problem.SPLITS_ONLY)
    with pytest.raises(FormulaError):
        witness_from_assignment(TWO_CLAUSES, [1, 2], Problem.SPLITS_ONLY)


@pytest.mark.parametrize("f", satisfiable_formulas(12, 40), ids=lambda f: str(f.clauses))
@pytest.mark.parametrize("problem", list(Problem))
def test_every_satisfying_assignment_gives_exact_witness(f, problem):
    g, k, _ = build_instance(f, problem)
    assert k == (11 if problem is Problem.SPLITS_ONLY else 8) * f.m
    assert g.max_degree() <= (4 if problem is Problem.SPLITS_ONLY else 3)
    for values in satisfying_assignments(f):
        s = witness_from_assignment(f, values, problem)
        assert len(s) == k
        assert verify_script(g, s, budget=k, exclusive=True, problem=problem).ok


def test_deletion_phases():
    assert deletion_phase(True) == 2
    assert deletion_phase(False) == 0


def test_printed_true_phase_leaves_literal_at_path_end():
    # deleting v_{3j+1}-v_{3j+2} for a true variable is not enough for its clauses
    g, k, layout = build_2ccedvs_instance(SINGLE)
    work = WorkingGraph(g)
    for var in (1, 2, 3):
        for i in range(1, 7):
            if i % 3 == 1:
                work.delete(layout.cycle_vertex(var, i), layout.cycle_vertex(var, i + 1))
    c = layout.clause_vertices[0]
    for vertex in layout.literal_vertices[0][1:]:
        work.delete(c, vertex)
    s = work.script(Problem.DELETIONS_AND_SPLITS)
    assert len(s) == k
    assert not verify_script(g, s).two_club_graph


@pytest.mark.parametrize(
    "clauses, expected",
    [
        ([(1, 2, 3), (-1, -2, -3), (1, 2, 4), (-1, -2, -4)], True),
        ([(1, 2, 3), (1, -2, 3), (-1, 2, -3), (-1, -2, -3)], False),
    ],
)
def test_max3sat4_ordering(clauses, expected):
    f = CnfFormula.from_clauses(clauses)
    assert check_max3sat4_ordering(f) is expected
    fixed = reorder_for_max3sat4(f)
    assert check_max3sat4_ordering(fixed)
    assert fixed.occurrence_signs(1) == [True, False, True, False]


def test_max3sat4_rejects_five_occurrences():
    f = CnfFormula.from_clauses([(1, 2, 3)] * 3 + [(-1, 2, 3)] * 2)
    with pytest.raises(FormulaError):
        check_max3sat4_ordering(f)


def test_reordered_occurrences_still_give_valid_witnesses():
    f = reorder_for_max3sat4(CnfFormula.from_clauses([(1, 2, 3), (1, -2, 3), (-1, 2, -3), (-1, -2, 4)]))
    for problem in Problem:
        g, k, _ = build_instance(f, problem)
        values = satisfying_assignments(f)[0]
        assert verify_script(g, witness_from_assignment(f, values, problem), budget=k).ok


def test_dimacs_round_trip():
    text = "c example\np cnf 3 2\n1 2 3 0\n1 2\n-3 0\n"
    f = parse_dimacs(text)
    assert f == TWO_CLAUSES
    assert parse_dimacs(format_dimacs(f)) == f
    assert format_dimacs(f) == "p cnf 3 2\n1 2 3 0\n1 2 -3 0\n"


@pytest.mark.parametrize("text", ["1 2 3 0\n", "p cnf 3 2\n1 2 3 0\n", "p cnf 3 1\n1 x 3 0\n"])
def test_dimacs_rejects_malformed(text):
    with pytest.raises((GraphFormatError, FormulaError)):
        parse_dimacs(text)


def test_parse_assignment():
    assert parse_assignment("v 1 -2 3 0\n") == [1, -2, 3]


def test_layout_sidecar():
    _, _, layout = build_2ccedvs_instance(TWO_CLAUSES)
    lines = format_layout(layout).splitlines()
    assert lines[:4] == ["problem=2ccedvs", "k=16", "variables=3", "clauses=2"]
    assert "cycle var=2 first=13 length=12" in lines
    assert lines[-1] == "clause index=2 literals=7,19,32 vertex=38"


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_witness_components_are_two_clubs(seed):
    f = CnfFormula.from_clauses(random_3cnf(5, 3, seed))
    sols = satisfying_assignments(f)
    if not sols:
        return
    for problem in Problem:
        g, k, _ = build_instance(f, problem)
        rep = verify_script(g, witness_from_assignment(f, sols[-1], problem), budget=k, exclusive=True)
        assert rep.ok
        assert len(connected_components(rep.final)) >= f.m


def test_satisfying_assignments_enumerates_all():
    sols = satisfying_assignments(SINGLE)
    assert len(sols) == 7
    assert all(SINGLE.is_satisfied_by(s) for s in sols)
    assert sum(1 for bits in itertools.product([False, True], repeat=3)
               if SINGLE.is_satisfied_by(dict(zip((1, 2, 3), bits)))) == 7


def test_single_clause_optimum_without_pruning():
    g, k, _ = build_2ccedvs_instance(SINGLE)
    assert fpt_optimum(g, Problem.DELETIONS_AND_SPLITS, kmax=8, prune=False)[0] == k == 8
