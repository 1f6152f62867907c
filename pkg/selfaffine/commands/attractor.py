"""
Attractor Command

Points of the attractor through the coding map of random words.
"""

import argparse

import numpy as np

from ..components import ids
from ..components.ifs import attractor_radius, attractor_sample
from .outcome import Outcome
from .separation import build_ifs


def handle(args, system):
    S = build_ifs(system)
    sample = attractor_sample(S, args.depth, args.count, args.seed, args.threads)
    result = {
        "count": args.count,
        "depth": args.depth,
        "truncation_bound": sample.truncation_bound,
        "radius_bound": attractor_radius(S),
        "max_norm": float(np.linalg.norm(sample.points, axis=1).max()),
        "points": sample.points.tolist(),
    }
    return Outcome(result, sample.to_frame(), level=args.depth)


def render(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(ids.ATTRACTOR, parents=parents, help="sample attractor points")
    parser.add_argument("--depth", type=int, default=30)
    parser.add_argument("--count", type=int, default=1000)
    parser.set_defaults(handler=handle)
    return parser
