"""Command-line front end: ``rwkit <command> FILE [ARGS] [options]``.

Exit status is 0 for a definite verdict, 2 for an undecided one and 1 for
any error (unreadable file, parse error, resource guard).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import report as rep
from .ars import parse_edges
from .errors import RwkitError
from .parser import parse_term, parse_trs


def _options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=None,
                        help="search budget: node expansions (default 10000) or normalization steps (default 1000)")
    common.add_argument("--max-term-size", type=int, default=10**6)
    common.add_argument("--max-term-depth", type=int, default=64)
    common.add_argument("--assume-terminating", action="store_true",
                        help="assert termination so Newman's Lemma can be applied")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--dedupe-cps", action="store_true",
                        help="report each critical pair once up to symmetry")
    common.add_argument("--allow-fresh-consts", action="store_true",
                        help="accept unknown identifiers in command-line terms as constants")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _options()
    parser = argparse.ArgumentParser(prog="rwkit", description="Term rewriting confluence analysis")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("check", "confluence verdict"),
        ("cps", "critical pairs and their joinability"),
        ("orthogonal", "left-linearity and overlap report"),
    ]:
        sub.add_parser(name, parents=[common], help=help_).add_argument("file")
    p = sub.add_parser("normalize", parents=[common], help="leftmost-outermost normalization trace")
    p.add_argument("file")
    p.add_argument("term")
    p = sub.add_parser("joinable", parents=[common], help="bounded joinability of two terms")
    p.add_argument("file")
    p.add_argument("left")
    p.add_argument("right")
    p = sub.add_parser("parallel", parents=[common], help="parallel reducts and diamond check of a term")
    p.add_argument("file")
    p.add_argument("term")
    sub.add_parser("ars", parents=[common], help="properties of a finite edge-list reduction system").add_argument("file")
    return parser


def run(args: argparse.Namespace) -> rep.Report:
    config = rep.AnalysisConfig(
        fuel=args.fuel,
        max_term_size=args.max_term_size,
        max_term_depth=args.max_term_depth,
        assume_terminating=args.assume_terminating,
        output_format=args.format,
        dedupe_symmetric_cps=args.dedupe_cps,
        allow_fresh_consts=args.allow_fresh_consts,
    )
    text = Path(args.file).read_text()
    if args.command == "ars":
        return rep.ars_report(parse_edges(text), config)
    trs = parse_trs(text)

    def term(s: str):
        return config.limits.check(parse_term(s, trs, config.allow_fresh_consts))

    if args.command == "check":
        return rep.check_report(trs, config)
    if args.command == "cps":
        return rep.cps_report(trs, config)
    if args.command == "orthogonal":
        return rep.orthogonal_report(trs, config)
    if args.command == "normalize":
        return rep.normalize_report(trs, term(args.term), config)
    if args.command == "joinable":
        return rep.joinable_report(trs, term(args.left), term(args.right), config)
    return rep.parallel_report(trs, term(args.term), config)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except (OSError, RwkitError) as e:
        print(f"rwkit: error: {e}", file=sys.stderr)
        return 1
    print(report.to_json() if args.format == "json" else report.to_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
