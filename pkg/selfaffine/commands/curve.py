"""
Pressure Curve Command

P_n(phi^s) on an even grid of s, as plot data.
"""

import argparse

import numpy as np

from ..components import ids
from ..components.pressure import pressure_curve
from .outcome import Outcome


def handle(args, system):
    s_max = 2.0 * system.linear.d if args.smax is None else args.smax
    grid = np.linspace(args.smin, s_max, args.steps)
    curve = pressure_curve(system.linear, args.n, grid, args.threads, args.budget)
    result = {
        "level": curve.level,
        "monotone": curve.monotone,
        "points": [{"s": s, "pressure": p} for s, p in zip(curve.s, curve.values)],
    }
    return Outcome(result, curve.to_frame(), level=args.n)


def render(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(ids.CURVE, parents=parents, help="pressure as a function of s")
    parser.add_argument("--n", type=int, default=6)
    parser.add_argument("--smin", type=float, default=0.0)
    parser.add_argument("--smax", type=float)
    parser.add_argument("--steps", type=int, default=21)
    parser.set_defaults(handler=handle)
    return parser
