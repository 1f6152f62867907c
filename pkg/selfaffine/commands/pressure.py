"""
Pressure Command

Level sums of a potential with the running upper bound and the
periodic-orbit lower bound.
"""

import argparse

import pandas as pd

from ..components import ids
from ..components.potentials import Factor, PhiS
from ..components.pressure import level_pressure, subadditivity_defects
from .outcome import Outcome, require_kronecker

POTENTIALS = ("phi", "factor1", "factor2")


def build_potential(system, kind, s):
    if kind == "phi":
        return PhiS(system.linear, s)
    base, iota = require_kronecker(system, ids.PRESSURE)
    return Factor(base, iota, s, 1 if kind == "factor1" else 2)


def handle(args, system):
    P = build_potential(system, args.potential, args.s)
    estimate = level_pressure(P, args.n, args.threads, args.budget)
    defects = subadditivity_defects(estimate)
    result = {
        "potential": P.label,
        "s": args.s,
        **estimate.to_dict(),
        "worst_subadditivity_slack": min((slack for _, _, slack in defects), default=None),
    }
    frame = pd.DataFrame(list(estimate.history), columns=["n", "pressure"])
    return Outcome(result, frame, level=args.n)


def render(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(ids.PRESSURE, parents=parents, help="level-n pressure with bounds")
    parser.add_argument("--s", type=float, default=1.0)
    parser.add_argument("--n", type=int, default=6)
    parser.add_argument("--potential", choices=POTENTIALS, default="phi")
    parser.set_defaults(handler=handle)
    return parser
