"""Command-line entry point.

Exit codes: 0 success, 1 other failure (precondition, structure
violation), 2 infeasible instance, 3 result limited by the solver budget,
4 unreadable input or bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import generators
from .canonical import semi_canonicalize
from .errors import (
    GenerationFailed,
    Infeasible,
    NoCoverExists,
    ParseError,
    PreconditionViolated,
    StructureViolation,
)
from .graph import format_edge_list, format_graph, parse_edge_list, parse_graph
from .matching import SolverBudget
from .oracle import exact_min_2ecss
from .pipeline import DEFAULT_EPSILON, solve, verify_solution
from .structured import structure_report

EXIT_OK, EXIT_FAIL, EXIT_INFEASIBLE, EXIT_BUDGET, EXIT_PARSE = 0, 1, 2, 3, 4
ORACLE_EDGE_LIMIT = 20


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    input: str | None
    edges: str | None
    epsilon: Fraction
    budget: SolverBudget
    seed: int
    fmt: str
    family: str | None
    n: list[int]
    density: Fraction
    count: int
    output: str | None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _sizes(text: str) -> list[int]:
    out = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N, A..B or a comma list, got {text!r}") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twoecss", description="2-edge-connected spanning subgraphs via triangle-free 2-edge-covers")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="graph file ('n m' header, then 'u v' lines)")
    common.add_argument("--epsilon", type=_fraction, default=DEFAULT_EPSILON, metavar="Q")
    common.add_argument("--seed", type=int, default=0, metavar="N")
    common.add_argument("--budget-nodes", type=int, default=10**7, metavar="N")
    common.add_argument("--budget-secs", type=float, default=60.0, metavar="N")
    common.add_argument("--format", choices=("text", "records"), default="text", dest="fmt")
    common.add_argument("--output", metavar="PATH", help="write to PATH instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("solve", parents=[common], help="run the full pipeline on a graph")
    p = sub.add_parser("verify", parents=[common], help="check a candidate 2ECSS")
    p.add_argument("--edges", metavar="PATH", required=True, help="candidate edge list")
    p = sub.add_parser("canonicalize", parents=[common], help="rewrite a triangle-free 2-edge-cover")
    p.add_argument("--edges", metavar="PATH", required=True, help="cover edge list")
    sub.add_parser("structure", parents=[common], help="report decidable structured-graph properties")
    for name in ("gen", "bench"):
        p = sub.add_parser(name, parents=[common], help="generate an instance" if name == "gen" else "run a sweep")
        p.add_argument("--family", choices=generators.FAMILIES, required=True)
        p.add_argument("--n", type=_sizes, required=True, metavar="N")
        p.add_argument("--density", type=_fraction, default=Fraction(1, 5), metavar="Q")
        p.add_argument("--count", type=int, default=1, metavar="N")
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        input=args.input,
        edges=getattr(args, "edges", None),
        epsilon=args.epsilon,
        budget=SolverBudget(args.budget_nodes, args.budget_secs),
        seed=args.seed,
        fmt=args.fmt,
        family=getattr(args, "family", None),
        n=getattr(args, "n", []),
        density=getattr(args, "density", Fraction(1, 5)),
        count=getattr(args, "count", 1),
        output=args.output,
    )


def _read(path: str | None) -> str:
    if path is None:
        raise ParseError("--input is required")
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def cmd_solve(cfg: RunConfig, out) -> int:
    G = parse_graph(_read(cfg.input))
    try:
        S, report = solve(G, cfg.epsilon, cfg.budget)
    except (Infeasible, NoCoverExists) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if cfg.fmt == "records":
        out.write(json.dumps(report.to_record()) + "\n")
    else:
        out.write("# solution\n")
        out.write(format_edge_list(S))
        out.write("# report\n")
        out.write(report.to_text())
    return EXIT_OK if report.optimal else EXIT_BUDGET


def _pairs(text: str):
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            u, v = (int(x) for x in parts)
        except ValueError:
            raise ParseError(f"line {lineno}: expected two integers, got {line!r}") from None
        pairs.append((u, v))
    return pairs


def cmd_verify(cfg: RunConfig, out) -> int:
    G = parse_graph(_read(cfg.input))
    verdict = verify_solution(G, _pairs(_read(cfg.edges)))
    if verdict:
        out.write("valid: 2-edge-connected spanning subgraph\n")
        return EXIT_OK
    out.write(f"invalid: {verdict.reason} {verdict.witness}\n")
    return EXIT_FAIL


def cmd_canonicalize(cfg: RunConfig, out) -> int:
    G = parse_graph(_read(cfg.input))
    H = parse_edge_list(_read(cfg.edges), G)
    try:
        Hp, trace = semi_canonicalize(G, H, check_structure=False)
    except PreconditionViolated as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except StructureViolation as exc:
        print(f"structure violation ({exc.kind}): {exc}", file=sys.stderr)
        return EXIT_FAIL
    out.write("# cover\n")
    out.write(format_edge_list(Hp.edges))
    out.write("# trace\n")
    out.write(trace.to_log())
    return EXIT_OK


def cmd_structure(cfg: RunConfig, out) -> int:
    G = parse_graph(_read(cfg.input))
    out.write(structure_report(G, cfg.epsilon).to_text())
    return EXIT_OK


def cmd_gen(cfg: RunConfig, out) -> int:
    for n in cfg.n:
        for i in range(cfg.count):
            try:
                G = generators.generate(cfg.family, n, cfg.density, cfg.seed + i)
            except GenerationFailed as exc:
                print(f"generation failed: {exc}", file=sys.stderr)
                return EXIT_FAIL
            out.write(format_graph(G))
    return EXIT_OK


def cmd_bench(cfg: RunConfig, out) -> int:
    ratios: list[Fraction] = []
    limited = failures = 0
    for n in cfg.n:
        for i in range(cfg.count):
            seed = cfg.seed + i
            head = {"family": cfg.family, "n": n, "seed": seed}
            try:
                G = generators.generate(cfg.family, n, cfg.density, seed)
                _, report = solve(G, cfg.epsilon, cfg.budget)
                if G.m <= ORACLE_EDGE_LIMIT:
                    report.with_opt(exact_min_2ecss(G, ORACLE_EDGE_LIMIT).value)
            except (GenerationFailed, Infeasible, NoCoverExists, StructureViolation) as exc:
                failures += 1
                rec = {**head, "error": f"{type(exc).__name__}: {exc}"}
            else:
                if not report.optimal:
                    limited += 1
                if report.ratio is not None:
                    ratios.append(report.ratio)
                rec = {**head, "m": G.m, **report.to_record()}
            if cfg.fmt == "records":
                out.write(json.dumps(rec) + "\n")
            else:
                out.write(" ".join(f"{k}={v}" for k, v in rec.items()) + "\n")
    summary = {
        "summary": True,
        "instances": len(cfg.n) * cfg.count,
        "failures": failures,
        "budget_limited": limited,
        "with_opt": len(ratios),
        "mean_ratio": str(sum(ratios) / len(ratios)) if ratios else None,
        "max_ratio": str(max(ratios)) if ratios else None,
    }
    if cfg.fmt == "records":
        out.write(json.dumps(summary) + "\n")
    else:
        out.write(" ".join(f"{k}={v}" for k, v in summary.items()) + "\n")
    return EXIT_BUDGET if limited else EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "canonicalize": cmd_canonicalize,
    "structure": cmd_structure,
    "gen": cmd_gen,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget_nodes <= 0 or args.budget_secs <= 0:
        print("budgets must be positive", file=sys.stderr)
        return EXIT_PARSE
    cfg = _config(args)
    # the structure report accepts any positive epsilon
    if not 0 < cfg.epsilon <= Fraction(1, 24) and cfg.command != "structure":
        print(f"epsilon must lie in (0, 1/24], got {cfg.epsilon}", file=sys.stderr)
        return EXIT_PARSE
    out = open(cfg.output, "w") if cfg.output else sys.stdout
    try:
        return COMMANDS[cfg.command](cfg, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    finally:
        if cfg.output:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
