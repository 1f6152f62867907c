"""
Four-map Pipeline Command

Runs every check of the four-map construction and prints a PASS/FAIL line
per check on stderr.
"""

import argparse
import sys

from colorama import Fore, Style

from ..components import ids
from ..components.errors import ValidationError
from ..components.ifs import theorem2_pipeline
from .outcome import Outcome


def status_line(name, passed):
    mark = f"{Fore.GREEN}PASS" if passed else f"{Fore.RED}FAIL"
    return f"{mark}{Style.RESET_ALL} {name}"


def handle(args, system):
    if system.fixture != ids.FIXTURE_THM2:
        raise ValidationError("the four-map pipeline runs on the thm2 fixture only")
    parameters = system.parameters
    report = theorem2_pipeline(
        parameters["alpha1"],
        parameters["alpha2"],
        parameters["theta"],
        args.n,
        args.tol,
        args.threads,
        args.budget,
    )
    if not args.quiet:
        for name, item in report.items.items():
            print(status_line(name, item["passed"]), file=sys.stderr)
    return Outcome(report.to_dict(), level=args.n, tolerance=args.tol)


def render(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(ids.THM2, parents=parents, help="four-map construction, end to end")
    parser.add_argument("--n", type=int, default=8)
    parser.add_argument("--tol", type=float, default=1e-3)
    parser.set_defaults(handler=handle, default_fixture=ids.FIXTURE_THM2)
    return parser
