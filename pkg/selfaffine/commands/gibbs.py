"""
Gibbs Weights Command

Level distributions of the two factor potentials, their total-variation
distance, and the empirical Gibbs sandwich of each.
"""

import argparse

import numpy as np
import pandas as pd

from ..components import ids
from ..components.equilibrium import gibbs_consistency, gibbs_level_weights, total_variation
from ..components.potentials import factor_pair
from ..components.words import apply_permutation, word_at, word_index, word_to_str
from .outcome import Outcome, require_kronecker


def relabel_defect(mu, nu, iota):
    """max_w |nu(w) - mu(iota(w))|."""
    images = [
        word_index(apply_permutation(iota, word_at(k, mu.N, mu.level)), mu.N) for k in range(mu.weights.size)
    ]
    return float(np.max(np.abs(nu.weights - mu.weights[images])))


def handle(args, system):
    base, iota = require_kronecker(system, ids.GIBBS)
    phi1, phi2 = factor_pair(base, iota, args.s)
    mu = gibbs_level_weights(phi1, args.n, args.threads, args.budget)
    nu = gibbs_level_weights(phi2, args.n, args.threads, args.budget)
    spreads = {}
    for name, P in (("factor1", phi1), ("factor2", phi2)):
        spread = gibbs_consistency(P, args.n, args.threads, args.budget)
        spreads[name] = {"low": spread.low, "high": spread.high, "spread": spread.spread}
    result = {
        "s": args.s,
        "level": args.n,
        "total_variation": total_variation(mu, nu),
        "relabel_defect": relabel_defect(mu, nu, iota),
        "gibbs_sandwich": spreads,
    }
    words = [word_to_str(word_at(k, mu.N, mu.level), mu.N) for k in range(mu.weights.size)]
    frame = pd.DataFrame({"word": words, "factor1": mu.weights, "factor2": nu.weights})
    return Outcome(result, frame, level=args.n)


def render(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(ids.GIBBS, parents=parents, help="factor equilibrium states at level n")
    parser.add_argument("--s", type=float, default=1.5)
    parser.add_argument("--n", type=int, default=8)
    parser.set_defaults(handler=handle)
    return parser
