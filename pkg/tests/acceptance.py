"""Acceptance criteria as plain functions returning ``(passed, detail)``."""

from __future__ import annotations

import contextlib
import io
import tempfile
import time
from pathlib import Path

from named_graphs import COVER_EXAMPLE_SETS, COVER_EXAMPLE_EDGES, p5

from twoclub.cli import main
from twoclub.cover import TwoClubCover, cover_cost, min_cover_cost, script_from_cover
from twoclub.edits import Problem, format_script, verify_script
from twoclub.fpt import fpt_optimum
from twoclub.generate import criterion_graphs, random_3cnf, random_tree
from twoclub.graph import Graph, is_forest, write_graph
from twoclub.oracles import catalog_small_graphs, iddfs_optimum
from twoclub.reductions import (
    CnfFormula,
    build_instance,
    satisfying_assignments,
    witness_from_assignment,
)
from twoclub.trees import leaves, remove_leaf_and_neighbor, tccedvs_tree, tccvs_tree

Result = tuple[bool, str]


def criterion_set() -> list[Graph]:
    return list(catalog_small_graphs(6)) + criterion_graphs(100, 7, 1000)


def p5_values() -> Result:
    start = time.perf_counter()
    g = p5()
    vs = fpt_optimum(g, Problem.SPLITS_ONLY)[0]
    ve = fpt_optimum(g, Problem.DELETIONS_AND_SPLITS)[0]
    ts, te = tccvs_tree(g)[0], tccedvs_tree(g)[0]
    took = time.perf_counter() - start
    ok = (vs, ve, ts, te) == (2, 1, 2, 1) and took < 1
    return ok, f"P5 2ccvs={vs} 2ccedvs={ve} (tree solvers {ts}, {te}) in {took:.3f}s"


def cover_example() -> Result:
    start = time.perf_counter()
    g = Graph.from_edges(9, COVER_EXAMPLE_EDGES)
    cover = TwoClubCover.of(COVER_EXAMPLE_SETS)
    cost = cover_cost(g, cover)
    derived = verify_script(g, script_from_cover(g, cover), budget=2).ok
    best = fpt_optimum(g, Problem.DELETIONS_AND_SPLITS)[0]
    oracle = min_cover_cost(g, False, size_bound=9)
    took = time.perf_counter() - start
    ok = cost == 2 and derived and best <= 2 and best == oracle and took < 1
    return ok, f"cover cost={cost} script verifies={derived} optimum={best} oracle={oracle} in {took:.3f}s"


def oracle_equivalence() -> Result:
    start = time.perf_counter()
    graphs = criterion_set()
    mismatches = 0
    for g in graphs:
        for problem in Problem:
            f = fpt_optimum(g, problem)[0]
            i = iddfs_optimum(g, problem)[0]
            c = min_cover_cost(g, problem is Problem.SPLITS_ONLY)
            mismatches += not (f == i == c)
    took = time.perf_counter() - start
    ok = mismatches == 0 and took <= 600
    return ok, f"{len(graphs)} graphs x 2 problems, {mismatches} mismatches in {took:.1f}s"


def tree_solvers() -> Result:
    trees = [g for g in catalog_small_graphs(6) if is_forest(g)]
    trees += [random_tree(2 + seed % 6, seed) for seed in range(200)]
    mismatches = 0
    for t in trees:
        vs, ss = tccvs_tree(t)
        ve, se = tccedvs_tree(t)
        mismatches += vs != iddfs_optimum(t, Problem.SPLITS_ONLY)[0]
        mismatches += ve != iddfs_optimum(t, Problem.DELETIONS_AND_SPLITS)[0]
        mismatches += not verify_script(t, ss, budget=vs).ok or not verify_script(t, se, budget=ve).ok
    times = []
    for solver in (tccvs_tree, tccedvs_tree):
        t = random_tree(2000, 2000)
        start = time.perf_counter()
        value, s = solver(t)
        times.append(time.perf_counter() - start)
        mismatches += not verify_script(t, s, budget=value).ok
    ok = mismatches == 0 and max(times) <= 10
    return ok, (f"{len(trees)} trees, {mismatches} mismatches; n=2000 took "
                f"{times[0]:.2f}s (2ccvs) and {times[1]:.2f}s (2ccedvs)")


def leaf_recursion() -> Result:
    violations = checked = 0
    for seed in range(50):
        t = random_tree(2 + seed * 38 // 49, 5000 + seed)
        total = tccvs_tree(t)[0]
        for v in leaves(t):
            rest, k = remove_leaf_and_neighbor(t, v)
            checked += 1
            violations += total != tccvs_tree(rest)[0] + k
    return violations == 0, f"{checked} leaves over 50 trees, {violations} violations"


def sandwich() -> Result:
    graphs = criterion_set()
    broken = 0
    for g in graphs:
        low = fpt_optimum(g, Problem.DELETIONS_AND_SPLITS)[0]
        high = fpt_optimum(g, Problem.SPLITS_ONLY)[0]
        broken += not low <= high <= 2 * low
    g = p5()
    low = iddfs_optimum(g, Problem.DELETIONS_AND_SPLITS)[0]
    high = iddfs_optimum(g, Problem.SPLITS_ONLY)[0]
    tight = high == 2 * low
    return broken == 0 and tight, f"{len(graphs)} graphs, {broken} violations; P5 upper bound attained={tight}"


def satisfiable_formulas(count: int, seed: int) -> list[tuple[CnfFormula, dict[int, bool]]]:
    out = []
    while len(out) < count:
        m = 1 + seed % 4
        f = CnfFormula.from_clauses(random_3cnf(3 + seed % 5, m, seed))
        sols = satisfying_assignments(f)
        if sols:
            out.append((f, sols[0]))
        seed += 1
    return out


def reductions() -> Result:
    bad = []
    for f, values in satisfiable_formulas(20, 900):
        for problem, factor, degree in ((Problem.SPLITS_ONLY, 11, 4), (Problem.DELETIONS_AND_SPLITS, 8, 3)):
            g, k, _ = build_instance(f, problem)
            s = witness_from_assignment(f, values, problem)
            ok = (k == factor * f.m and g.max_degree() <= degree and len(s) == k
                  and verify_script(g, s, budget=k, exclusive=True, problem=problem).ok)
            if not ok:
                bad.append((f.clauses, problem.value))
    start = time.perf_counter()
    g, k, _ = build_instance(CnfFormula.from_clauses([(1, 2, 3)]), Problem.DELETIONS_AND_SPLITS)
    value = fpt_optimum(g, Problem.DELETIONS_AND_SPLITS, kmax=8)[0]
    took = time.perf_counter() - start
    ok = not bad and value == 8 and took <= 1800
    return ok, f"20 formulas, {len(bad)} failures; M=1 2ccedvs instance fpt optimum={value} in {took:.2f}s"


def _cli(argv: list[str]) -> str:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        main(argv)
    return buf.getvalue()


def determinism() -> Result:
    runs = []
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp)
        for rep in range(2):
            outputs = []
            graph = root / "g.gcc"
            outputs.append(_cli(["gen", "random-graph", "--n", "7", "--p", "0.45", "--seed", "11", "--out", str(graph)]))
            outputs.append(graph.read_text())
            for alg in ("fpt", "brute", "cover"):
                for problem in ("2ccvs", "2ccedvs"):
                    script = root / f"s-{alg}-{problem}.txt"
                    outputs.append(_cli(["solve", str(graph), "--problem", problem, "--alg", alg,
                                         "--no-timing", "--out", str(script), "--format", "kv"]))
                    outputs.append(script.read_text())
            tree = root / "t.gcc"
            write_graph(random_tree(60, 3), tree)
            outputs.append(_cli(["solve", str(tree), "--problem", "2ccedvs", "--no-timing"]))
            f, values = satisfiable_formulas(1, 77)[0]
            outputs.append(format_script(witness_from_assignment(f, values, Problem.SPLITS_ONLY)))
            runs.append(outputs)
    same = runs[0] == runs[1]
    return same, f"{len(runs[0])} reports and scripts compared across two runs, identical={same}"


CRITERIA = {
    1: ("values on P5", p5_values),
    2: ("nine-vertex cover example", cover_example),
    3: ("oracle equivalence", oracle_equivalence),
    4: ("tree solvers", tree_solvers),
    5: ("leaf recursion for every leaf", leaf_recursion),
    6: ("sandwich bound", sandwich),
    7: ("reductions", reductions),
    8: ("determinism", determinism),
}
