"""
Irreducibility Command

Invariant subspace and invariant union search, plus the eigenvalue-ratio
witness and conjugacy obstructions for Kronecker systems. Nothing found
means nothing found up to the requested depth.
"""

import argparse

from ..components import ids, settings
from ..components.equilibrium import benoist_witness
from ..components.irreducibility import conjugacy_obstruction, invariant_subspace_search, invariant_subspaces
from ..components.words import word_to_str
from .outcome import Outcome


def handle(args, system):
    T = system.linear
    if args.exterior is not None:
        T = T.exterior_power(args.exterior)
    result = {"mode": args.mode, "depth": args.depth, "dimension": T.d}
    if args.mode == ids.MODE_SINGLE:
        found = invariant_subspaces(T, args.depth, args.tol)
        result["witnesses"] = [w.to_dict(T.N) for w in found]
    else:
        witness = invariant_subspace_search(T, args.mode, args.depth, args.tol)
        result["witnesses"] = [] if witness is None else [witness.to_dict(T.N)]
    if not result["witnesses"]:
        result["verdict"] = f"no witness found up to depth {args.depth}"

    if system.base is not None and system.iota is not None:
        base, iota = system.base, system.iota
        witness = benoist_witness(base, iota, args.depth)
        result["eigenvalue_ratio_witness"] = None if witness is None else word_to_str(witness, base.N)
        result["obstructions"] = conjugacy_obstruction(base, iota, args.depth).to_dict(base.N)
        result["note"] = "spectral evidence only; Zariski density is not decided"
    return Outcome(result, level=args.depth, tolerance=args.tol)


def render(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(ids.IRRED, parents=parents, help="irreducibility witnesses")
    parser.add_argument("--mode", choices=[ids.MODE_SINGLE, ids.MODE_FINITE_UNION], default=ids.MODE_SINGLE)
    parser.add_argument("--depth", type=int, default=4)
    parser.add_argument("--tol", type=float, default=settings.ANGLE_TOL)
    parser.add_argument("--exterior", type=int, help="search on the k-th exterior powers instead")
    parser.set_defaults(handler=handle)
    return parser
