"""
Quasi-multiplicativity Command
"""

import argparse

from ..components import ids
from ..components.irreducibility import quasi_multiplicativity_profile
from .outcome import Outcome


def handle(args, system):
    profile = quasi_multiplicativity_profile(system.linear, args.s, args.n0, args.nmax)
    result = {
        "s": profile.s,
        "n0": profile.n0,
        "decay_slope": profile.decay_slope() if len(profile.rows) > 1 else None,
        "rows": [{"n": n, "ratio": ratio} for n, ratio in profile.rows],
    }
    return Outcome(result, profile.to_frame(), level=args.nmax)


def render(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(ids.QM, parents=parents, help="quasi-multiplicativity profile")
    parser.add_argument("--s", type=float, default=2.0)
    parser.add_argument("--n0", type=int, default=3)
    parser.add_argument("--nmax", type=int, default=10)
    parser.set_defaults(handler=handle)
    return parser
