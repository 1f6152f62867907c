"""
Separation Command

Ball-based strong separation certificate.
"""

import argparse

import numpy as np

from ..components import ids
from ..components.errors import ValidationError
from ..components.ifs import FOUR_MAP_RADIUS, AffineIFS, separation_certificate
from .outcome import Outcome


def build_ifs(system):
    if system.translations is None:
        raise ValidationError("this system has no translations")
    return AffineIFS(system.linear, system.translations)


def parse_center(text, d):
    if not text:
        return np.zeros(d)
    try:
        center = np.array([float(part) for part in text.split(",")])
    except ValueError:
        raise ValidationError(f"--center {text!r} must be comma-separated numbers") from None
    if center.shape != (d,):
        raise ValidationError(f"--center needs {d} coordinates, got {center.size}")
    return center


def handle(args, system):
    S = build_ifs(system)
    radius = args.radius
    if radius is None:
        if system.fixture != ids.FIXTURE_THM2:
            raise ValidationError("--radius is required for this system")
        radius = FOUR_MAP_RADIUS
    certificate = separation_certificate(S, parse_center(args.center, S.d), radius)
    return Outcome(certificate.to_dict())


def render(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(ids.SEPARATION, parents=parents, help="strong separation certificate")
    parser.add_argument("--radius", type=float)
    parser.add_argument("--center", help="comma-separated coordinates (default: origin)")
    parser.set_defaults(handler=handle)
    return parser
