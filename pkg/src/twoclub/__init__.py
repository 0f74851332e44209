"""Exact solvers for 2-club cluster editing with vertex splitting."""

from .cover import (
    TwoClubCover,
    cover_cost,
    min_cover,
    min_cover_cost,
    script_from_cover,
    validate_cover,
)
from .edits import (
    DeleteEdge,
    EditScript,
    Problem,
    Split,
    VerifyReport,
    apply_script,
    parse_script,
    verify_script,
)
from .errors import TwoClubError
from .fpt import aux, fpt_decide, fpt_optimum
from .graph import Graph, is_two_club, is_two_club_graph, parse_graph
from .oracles import catalog_small_graphs, iddfs_optimum
from .reductions import CnfFormula, build_instance, witness_from_assignment
from .solve import Algorithm, SolveResult, solve
from .trees import tccedvs_tree, tccvs_tree

__all__ = [
    "Algorithm",
    "CnfFormula",
    "DeleteEdge",
    "EditScript",
    "Graph",
    "Problem",
    "SolveResult",
    "Split",
    "TwoClubCover",
    "TwoClubError",
    "VerifyReport",
    "apply_script",
    "aux",
    "build_instance",
    "catalog_small_graphs",
    "cover_cost",
    "fpt_decide",
    "fpt_optimum",
    "iddfs_optimum",
    "is_two_club",
    "is_two_club_graph",
    "min_cover",
    "min_cover_cost",
    "parse_graph",
    "parse_script",
    "script_from_cover",
    "solve",
    "tccedvs_tree",
    "tccvs_tree",
    "validate_cover",
    "verify_script",
    "witness_from_assignment",
]
