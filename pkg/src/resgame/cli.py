"""Command-line front end: ``resgame {analyze,equilibrium,core-check,advise}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import ParseError, ResourceGameError, ValidationError
from .report import AnalysisOptions, render_report, require_applicable, run_analysis
from .scenario import parse_scenario

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2

COMMANDS = {
    "analyze": "equilibrium, core check, loyalty decision, remediation and estimation gap",
    "equilibrium": "Cournot equilibrium and cooperative worth (needs a game block)",
    "core-check": "core non-emptiness, violating coalitions and the loyalty decision",
    "advise": "provider remediation levers against the listed offers (needs a game block)",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resgame",
        description="Cooperative Cournot analysis of a user's multi-service resource.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in COMMANDS.items():
        cmd = sub.add_parser(name, help=help_text, description=help_text)
        cmd.add_argument("--scenario", required=True, help="scenario file, or '-' for stdin")
        cmd.add_argument("--format", choices=("table", "machine"), default="table")
        cmd.add_argument(
            "--strict",
            action="store_true",
            help="exit with status 2 when some remediation lever is infeasible",
        )
    return parser


def _read(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    return Path(source).read_text()


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = parse_scenario(_read(args.scenario))
        require_applicable(scenario, args.command)
    except OSError as exc:
        print(f"resgame: cannot read scenario: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, ValidationError) as exc:
        print(f"resgame: {exc}", file=sys.stderr)
        return EXIT_INPUT

    try:
        report = run_analysis(scenario, AnalysisOptions.for_command(args.command))
    except ResourceGameError as exc:
        print(f"resgame: analysis failed: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(render_report(report, args.format))
    if args.strict and report.infeasible:
        print("resgame: some remediation lever is infeasible", file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
