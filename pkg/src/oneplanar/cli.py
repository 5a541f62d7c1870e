"""Command-line entry point: ``oneplanar <command> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .coloring import exact_total_chromatic_number, verify_total_coloring
from .discharging import audit, format_fraction, solve_cluster_program
from .extend import NoConfigurationFound, total_color
from .formats import FormatError, as_graph, parse_coloring, parse_graph_or_drawing, serialize_coloring
from .generate import GeneratorConfig, generate_random_1planar
from .graph_core import DrawingError, parse_drawing, serialize_drawing, underlying_graph, validate_drawing
from .structure import check_embedding_lemmas


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")


def cmd_validate(args) -> int:
    d = parse_drawing(_read(args.drawing))
    report = validate_drawing(d)
    print(report)
    if report.ok and args.diagnostics:
        print(check_embedding_lemmas(d).render(), end="")
    return 0 if report.ok else 1


def cmd_color(args) -> int:
    d = parse_drawing(_read(args.drawing))
    report = validate_drawing(d)
    if not report.ok:
        print(report, file=sys.stderr)
        return 1
    g = underlying_graph(d)
    r = args.r if args.r is not None else max(13, g.max_degree())
    try:
        coloring, trace = total_color(g, r)
    except NoConfigurationFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(audit(d, r).render(), file=sys.stderr, end="")
        return 2
    sys.stdout.write(f"# k {r + 2}\n" + serialize_coloring(coloring))
    if args.trace:
        Path(args.trace).write_text("\n".join(trace.lines()) + "\n", encoding="utf-8")
    return 0


def cmd_verify(args) -> int:
    g = as_graph(parse_graph_or_drawing(_read(args.input)))
    coloring = parse_coloring(_read(args.coloring), args.k)
    report = verify_total_coloring(g, coloring, args.k)
    if report.ok:
        print(f"ok: proper total {args.k}-coloring")
        return 0
    print(report)
    return 1


def cmd_oracle(args) -> int:
    g = as_graph(parse_graph_or_drawing(_read(args.graph)))
    max_k = args.max_k if args.max_k is not None else g.max_degree() + 2
    k = exact_total_chromatic_number(g, max_k)
    if k is None:
        print(f"no total coloring with at most {max_k} colors")
        return 1
    print(k)
    return 0


def cmd_audit(args) -> int:
    d = parse_drawing(_read(args.drawing))
    report = validate_drawing(d)
    if not report.ok:
        print(report, file=sys.stderr)
        return 1
    result = audit(d, args.r)
    print(result.render(show_transfers=args.transfers), end="")
    return 0 if result.conserved and result.euler_ok is not False else 1


def cmd_qd(args) -> int:
    q, arg = solve_cluster_program(args.d, side_conditions=args.side_conditions)
    print(f"q_{args.d} = {format_fraction(q)}")
    print("maximizer n1..n5 = " + " ".join(str(x) for x in arg.ns))
    return 0


def cmd_gen(args) -> int:
    cfg = GeneratorConfig(n=args.n, seed=args.seed, crossing_fraction=args.crossings,
                          max_degree_cap=args.max_degree)
    sys.stdout.write(serialize_drawing(generate_random_1planar(cfg)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oneplanar", description="Total coloring of 1-planar graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a drawing file")
    p.add_argument("drawing")
    p.add_argument("--diagnostics", action="store_true", help="also report the local embedding checks")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("color", help="total-color a drawing with r+2 colors")
    p.add_argument("drawing")
    p.add_argument("--r", type=int, default=None, help="default max(13, max degree)")
    p.add_argument("--trace", metavar="FILE", help="write the reduction trace here")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="check a coloring against a drawing or graph")
    p.add_argument("input")
    p.add_argument("coloring")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact total chromatic number (small graphs)")
    p.add_argument("graph")
    p.add_argument("--max-k", type=int, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("audit", help="run the discharging rules on a drawing")
    p.add_argument("drawing")
    p.add_argument("--r", type=int, default=13)
    p.add_argument("--transfers", action="store_true", help="print every transfer")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("qd", help="solve the cluster program for degree d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--side-conditions", action="store_true")
    p.set_defaults(func=cmd_qd)

    p = sub.add_parser("gen", help="print a random 1-planar drawing")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--crossings", default="1/2", help="fraction of quadrilaterals to cross, e.g. 0.5 or 1/3")
    p.add_argument("--max-degree", type=int, default=None)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DrawingError, FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
