"""
Affinity Dimension Command
"""

import argparse

import pandas as pd

from ..components import ids
from ..components.pressure import affinity_dimension
from .outcome import Outcome


def handle(args, system):
    result = affinity_dimension(system.linear, args.n, args.tol, args.threads, args.budget)
    frame = pd.DataFrame(sorted(result.evaluations), columns=["s", "pressure"])
    payload = {
        **result.to_dict(),
        "note": "bisection on the level-n pressure, which over-estimates the limit; not a certified dimension",
    }
    return Outcome(payload, frame, level=args.n, tolerance=args.tol)


def render(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(ids.DIMAFF, parents=parents, help="affinity dimension by bisection")
    parser.add_argument("--n", type=int, default=6)
    parser.add_argument("--tol", type=float, default=1e-3)
    parser.set_defaults(handler=handle)
    return parser
