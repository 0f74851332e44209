"""Command-line interface: ``twoclub <command> ...``.

Exit codes:

* 0 success (solved, verified, sandwich holds, files written)
* 1 negative result: the script fails verification or the sandwich is violated
* 2 usage error (bad flags)
* 3 unreadable or malformed input file
* 4 no solution within ``--kmax``
* 5 the tree algorithm was given a graph with a cycle
* 6 instance exceeds an exhaustive oracle's size bound
* 7 formula or assignment rejected by the reductions
"""

from __future__ import annotations

import argparse
import sys
import time
from collections.abc import Sequence
from pathlib import Path

from .edits import Problem, format_script, read_script, verify_script, write_script
from .errors import (
    FormulaError,
    GraphFormatError,
    InvalidCoverError,
    InvalidGraphError,
    NotAForestError,
    SizeBoundError,
)
from .fpt import DEFAULT_KMAX
from .generate import random_3cnf, random_graph, random_tree
from .graph import format_graph, read_graph, write_graph
from .oracles import catalog_small_graphs
from .reductions import (
    CnfFormula,
    build_instance,
    check_max3sat4_ordering,
    format_dimacs,
    format_layout,
    parse_assignment,
    read_dimacs,
    reorder_for_max3sat4,
    witness_from_assignment,
)
from .solve import Algorithm, solve

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_BUDGET = 4
EXIT_NOT_FOREST = 5
EXIT_SIZE = 6
EXIT_FORMULA = 7


class Report:
    """Ordered key/value pairs rendered as ``key=value`` or aligned text."""

    def __init__(self, title: str) -> None:
        self.title = title
        self.items: list[tuple[str, object]] = []

    def add(self, key: str, value: object) -> None:
        self.items.append((key, value))

    def render(self, fmt: str) -> str:
        def show(v: object) -> str:
            if isinstance(v, bool):
                return "yes" if v else "no"
            if isinstance(v, float):
                return f"{v:.6f}"
            return str(v)

        if fmt == "kv":
            return "".join(f"{k}={show(v)}\n" for k, v in self.items)
        width = max((len(k) for k, _ in self.items), default=0)
        body = "".join(f"  {k.replace('_', ' '):<{width}}  {show(v)}\n" for k, v in self.items)
        return f"{self.title}\n{body}"


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "kv"), default="text")


def _problem(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--problem", choices=("2ccvs", "2ccedvs"), required=required,
                   default=None if required else "2ccedvs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twoclub", description="2-club cluster editing with vertex splitting")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute an optimum and a witness script")
    p.add_argument("graph")
    _problem(p)
    p.add_argument("--alg", choices=[a.value for a in Algorithm], default="auto")
    p.add_argument("--exclusive", action="store_true")
    p.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write the witness script here")
    p.add_argument("--no-timing", action="store_true", help="omit wall time for byte-stable reports")
    _common(p)

    p = sub.add_parser("verify", help="check a script against a graph")
    p.add_argument("graph")
    p.add_argument("script")
    _problem(p, required=False)
    p.add_argument("--budget", type=int)
    p.add_argument("--exclusive", action="store_true")
    _common(p)

    p = sub.add_parser("compare", help="both optima and the sandwich bound")
    p.add_argument("graph")
    p.add_argument("--alg", choices=[a.value for a in Algorithm], default="auto")
    p.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    p.add_argument("--exclusive", action="store_true")
    _common(p)

    p = sub.add_parser("reduce", help="build the SAT reduction instance")
    p.add_argument("cnf")
    _problem(p)
    p.add_argument("--out-graph", required=True)
    p.add_argument("--out-layout")
    p.add_argument("--reorder-max3sat4", action="store_true")
    _common(p)

    p = sub.add_parser("witness", help="script from a satisfying assignment")
    p.add_argument("cnf")
    _problem(p)
    p.add_argument("--assignment", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--reorder-max3sat4", action="store_true")
    _common(p)

    p = sub.add_parser("gen", help="generate seeded instances")
    p.add_argument("kind", choices=("random-graph", "random-tree", "catalog", "random-cnf"))
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--nmax", type=int, default=5)
    p.add_argument("--vars", type=int, default=3)
    p.add_argument("--clauses", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (random kinds); stdout when absent")
    p.add_argument("--out-dir", help="output directory (catalog)")
    _common(p)
    return parser


def _timing(report: Report, start: float, args: argparse.Namespace) -> None:
    if not getattr(args, "no_timing", False):
        report.add("wall_time_s", time.perf_counter() - start)


def cmd_solve(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    g = read_graph(args.graph)
    result = solve(g, args.problem, args.alg, args.kmax, args.exclusive, args.jobs)
    report = Report("solve")
    report.add("problem", result.problem.value)
    report.add("algorithm", result.algorithm.value)
    report.add("exclusive", result.exclusive)
    report.add("n", g.n)
    report.add("m", g.m)
    if not result.solved:
        report.add("status", "budget_exceeded")
        report.add("kmax", args.kmax)
        for k, v in result.stats.items():
            report.add(k, v)
        _timing(report, start, args)
        sys.stdout.write(report.render(args.format))
        return EXIT_BUDGET
    report.add("status", "solved")
    report.add("value", result.value)
    for k, v in result.stats.items():
        report.add(k, v)
    if args.out:
        write_script(result.script, args.out)
        report.add("script_path", args.out)
    _timing(report, start, args)
    sys.stdout.write(report.render(args.format))
    if not args.out:
        text = format_script(result.script)
        if args.format == "kv":
            text = "".join(f"op={line}\n" for line in text.splitlines())
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    s = read_script(args.script, args.problem)
    rep = verify_script(g, s, args.budget, args.exclusive, s.problem)
    report = Report("verify")
    report.add("result", "pass" if rep.ok else "fail")
    report.add("problem", s.problem.value)
    report.add("ops_valid", rep.ops_valid)
    if rep.failed_index is not None:
        report.add("failed_op", rep.failed_index + 1)
        report.add("error", rep.error)
    report.add("cost", rep.cost)
    report.add("budget", "none" if rep.budget is None else rep.budget)
    report.add("within_budget", rep.within_budget)
    report.add("operations_allowed", rep.operations_allowed)
    report.add("two_club_graph", rep.two_club_graph)
    report.add("new_ids", ",".join(str(v + 1) for v in rep.new_ids) or "none")
    sys.stdout.write(report.render(args.format))
    return EXIT_OK if rep.ok else EXIT_NEGATIVE


def cmd_compare(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    report = Report("compare")
    values = {}
    for problem in (Problem.DELETIONS_AND_SPLITS, Problem.SPLITS_ONLY):
        r = solve(g, problem, args.alg, args.kmax, args.exclusive)
        if not r.solved:
            report.add("status", "budget_exceeded")
            sys.stdout.write(report.render(args.format))
            return EXIT_BUDGET
        values[problem] = r.value
    low, high = values[Problem.DELETIONS_AND_SPLITS], values[Problem.SPLITS_ONLY]
    holds = low <= high <= 2 * low
    report.add("2ccedvs", low)
    report.add("2ccvs", high)
    report.add("sandwich_holds", holds)
    report.add("lower_tight", low == high)
    report.add("upper_tight", high == 2 * low and low > 0)
    sys.stdout.write(report.render(args.format))
    return EXIT_OK if holds else EXIT_NEGATIVE


def _formula(path: str, reorder: bool) -> CnfFormula:
    f = read_dimacs(path)
    return reorder_for_max3sat4(f) if reorder else f


def cmd_reduce(args: argparse.Namespace) -> int:
    f = _formula(args.cnf, args.reorder_max3sat4)
    g, k, layout = build_instance(f, args.problem)
    write_graph(g, args.out_graph)
    if args.out_layout:
        Path(args.out_layout).write_text(format_layout(layout))
    report = Report("reduce")
    report.add("problem", layout.problem.value)
    report.add("clauses", f.m)
    report.add("n", g.n)
    report.add("m", g.m)
    report.add("k", k)
    report.add("max_degree", g.max_degree())
    if args.reorder_max3sat4:
        report.add("max3sat4_ordered", check_max3sat4_ordering(f))
    report.add("graph_path", args.out_graph)
    if args.out_layout:
        report.add("layout_path", args.out_layout)
    sys.stdout.write(report.render(args.format))
    return EXIT_OK


def cmd_witness(args: argparse.Namespace) -> int:
    f = _formula(args.cnf, args.reorder_max3sat4)
    lits = parse_assignment(Path(args.assignment).read_text())
    s = witness_from_assignment(f, lits, args.problem)
    g, k, _ = build_instance(f, args.problem)
    rep = verify_script(g, s, k, exclusive=True)
    write_script(s, args.out)
    report = Report("witness")
    report.add("problem", s.problem.value)
    report.add("length", len(s))
    report.add("k", k)
    report.add("verified", rep.ok)
    report.add("script_path", args.out)
    sys.stdout.write(report.render(args.format))
    return EXIT_OK if rep.ok else EXIT_NEGATIVE


def cmd_gen(args: argparse.Namespace) -> int:
    report = Report("gen")
    report.add("kind", args.kind)
    report.add("seed", args.seed)
    if args.kind == "catalog":
        if not args.out_dir:
            raise ValueError("catalog needs --out-dir")
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        count = 0
        for i, g in enumerate(catalog_small_graphs(args.nmax)):
            write_graph(g, out / f"g{i:04d}_n{g.n}_m{g.m}.gcc")
            count += 1
        report.add("graphs", count)
        report.add("out_dir", str(out))
        sys.stdout.write(report.render(args.format))
        return EXIT_OK
    if args.kind == "random-cnf":
        clauses = random_3cnf(args.vars, args.clauses, args.seed)
        text = format_dimacs(CnfFormula(args.vars, tuple(clauses)))
    elif args.kind == "random-graph":
        text = format_graph(random_graph(args.n, args.p, args.seed))
    else:
        text = format_graph(random_tree(args.n, args.seed))
    if args.out:
        Path(args.out).write_text(text)
        report.add("path", args.out)
        sys.stdout.write(report.render(args.format))
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "compare": cmd_compare,
    "reduce": cmd_reduce,
    "witness": cmd_witness,
    "gen": cmd_gen,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (GraphFormatError, InvalidGraphError, InvalidCoverError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotAForestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_FOREST
    except SizeBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except FormulaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMULA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
