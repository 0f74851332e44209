"""One entry point over every exact solver."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .cover import min_cover, script_from_cover
from .edits import EditScript, Problem
from .errors import NotAForestError
from .fpt import DEFAULT_KMAX, FptStats, fpt_optimum
from .graph import Graph, is_forest
from .oracles import iddfs_optimum
from .trees import tccedvs_tree, tccvs_tree


class Algorithm(str, Enum):
    AUTO = "auto"
    BRUTE = "brute"
    FPT = "fpt"
    TREE = "tree"
    COVER = "cover"


@dataclass
class SolveResult:
    """Optimum (``None`` when nothing fits in ``kmax``), witness and counters."""

    problem: Problem
    algorithm: Algorithm
    value: int | None
    script: EditScript | None
    exclusive: bool = False
    stats: dict[str, int] = field(default_factory=dict)

    @property
    def solved(self) -> bool:
        return self.value is not None


def solve(
    g: Graph,
    problem: Problem | str,
    alg: Algorithm | str = Algorithm.AUTO,
    kmax: int = DEFAULT_KMAX,
    exclusive: bool = False,
    jobs: int = 1,
) -> SolveResult:
    """Run the chosen solver.  ``auto`` uses the tree algorithms on forests, else fpt."""
    problem = Problem.parse(problem)
    alg = Algorithm(alg)
    if alg is Algorithm.AUTO:
        alg = Algorithm.TREE if is_forest(g) else Algorithm.FPT
    if alg is Algorithm.TREE:
        if not is_forest(g):
            raise NotAForestError("the tree algorithm needs an acyclic input")
        solver = tccvs_tree if problem is Problem.SPLITS_ONLY else tccedvs_tree
        value, s = solver(g)
        return SolveResult(problem, alg, value, s, exclusive, {"nodes": g.n})
    if alg is Algorithm.COVER:
        if exclusive:
            raise ValueError("the cover oracle models non-exclusive splits only")
        value, cover = min_cover(g, edge_covering=problem is Problem.SPLITS_ONLY)
        s = EditScript(script_from_cover(g, cover).ops, problem)
        return SolveResult(problem, alg, value, s, exclusive, {"cover_sets": len(cover.canonical())})
    if alg is Algorithm.BRUTE:
        stats: dict[str, int] = {}
        got = iddfs_optimum(g, problem, kmax, exclusive, max_k=max(kmax, 5), stats=stats)
        value, s = got if got else (None, None)
        return SolveResult(problem, alg, value, s, exclusive, stats)
    fstats = FptStats()
    got = fpt_optimum(g, problem, kmax, exclusive, jobs=jobs, stats=fstats)
    value, s = got if got else (None, None)
    counters = {"nodes": fstats.nodes, "aux_calls": fstats.aux_calls,
                "aux_nodes": fstats.aux_nodes, "pruned": fstats.pruned}
    return SolveResult(problem, alg, value, s, exclusive, counters)
