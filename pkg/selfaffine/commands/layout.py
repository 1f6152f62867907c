"""
Command-line layout for selfaffine

Composes the argument parser from the subcommand modules. Each subcommand
module exposes ``render(subparsers, parents)`` which registers its parser
and its handler; handlers take (args, system) and return an ``Outcome``
(see ``outcome``).
"""

import argparse

from ..components import ids
from ..components.errors import UsageError
from . import attractor, curve, dimaff, distinct, gibbs, irred, pressure, qm, separation, thm2


def common_options() -> argparse.ArgumentParser:
    """Options accepted after every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_argument_group("system")
    source.add_argument("--fixture", choices=[ids.FIXTURE_THM1, ids.FIXTURE_THM2, ids.FIXTURE_EQ1])
    source.add_argument("--config", help="TOML system description")
    source.add_argument("--alpha1", type=float)
    source.add_argument("--alpha2", type=float)
    source.add_argument("--theta", type=float, help="rotation angle in radians")

    output = common.add_argument_group("output")
    output.add_argument("--out", choices=[ids.OUT_JSON, ids.OUT_CSV], default=ids.OUT_JSON)
    output.add_argument("--output", help="write to this file instead of stdout")

    run = common.add_argument_group("run")
    run.add_argument("--threads", type=int, help=f"worker count (default ${ids.ENV_THREADS} or CPU count)")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--budget", type=int, help=f"word enumeration budget (default ${ids.ENV_WORD_BUDGET} or 1e8)")
    run.add_argument("--verbose", "-v", action="store_true")
    run.add_argument("--quiet", "-q", action="store_true")
    return common


class CommandParser(argparse.ArgumentParser):
    """Parser whose usage errors raise instead of exiting."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def create_layout(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    """Register every subcommand on ``parser``."""
    parents = [common_options()]
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    pressure.render(subparsers, parents)
    dimaff.render(subparsers, parents)
    curve.render(subparsers, parents)
    gibbs.render(subparsers, parents)
    distinct.render(subparsers, parents)
    qm.render(subparsers, parents)
    irred.render(subparsers, parents)
    separation.render(subparsers, parents)
    attractor.render(subparsers, parents)
    thm2.render(subparsers, parents)
    return parser
