"""
Distinctness Command

Ratio diagnostic separating the two factor equilibrium states.
"""

import argparse

from ..components import ids
from ..components.equilibrium import benoist_witness, distinctness_diagnostic
from ..components.errors import NotAWitness
from ..components.words import word_from_str, word_to_str
from .outcome import Outcome, require_kronecker


def handle(args, system):
    base, iota = require_kronecker(system, ids.DISTINCT)
    if args.word:
        word = word_from_str(args.word)
    else:
        word = benoist_witness(base, iota, args.depth)
        if word is None:
            raise NotAWitness(f"no eigenvalue-ratio witness up to depth {args.depth}")
    diagnostic = distinctness_diagnostic(base, iota, args.s, word, args.nmax)
    result = diagnostic.to_dict(base.N)
    result["word"] = word_to_str(word, base.N)
    return Outcome(result, diagnostic.to_frame(), level=args.nmax)


def render(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(ids.DISTINCT, parents=parents, help="log-ratio of the factor potentials")
    parser.add_argument("--s", type=float, default=1.5)
    parser.add_argument("--word", help="base word, e.g. 12; default: first witness found")
    parser.add_argument("--depth", type=int, default=4)
    parser.add_argument("--nmax", type=int, default=24)
    parser.set_defaults(handler=handle)
    return parser
