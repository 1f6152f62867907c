"""
Equilibrium States at Finite Level

Equilibrium states are represented by their level-n cylinder weights
Phi(w) / sum Phi. This module builds those distributions, compares the two
factor equilibrium states, and computes Lyapunov dimensions of Bernoulli
measures.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from . import linalg, settings
from .errors import NonFinite, NotAWitness, ValidationError
from .potentials import factor_pair
from .pressure import bisect, check_contracting, level_spectra, level_values, tree_sum
from .words import (
    apply_permutation,
    level_products,
    power,
    validate_word,
    word_at,
    word_index,
    word_matrix,
    word_to_str,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LevelDistribution:
    """Probability weights of the N^n cylinders of level n, lexicographic order."""

    level: int
    N: int
    weights: np.ndarray
    source: str = ""

    def __post_init__(self):
        weights = np.asarray(self.weights, dtype=float)
        if weights.shape != (self.N**self.level,):
            raise ValidationError(f"expected {self.N ** self.level} weights, got {weights.shape}")
        if not np.all(np.isfinite(weights)):
            raise NonFinite("level weights are not finite")
        if np.any(weights <= 0):
            raise NonFinite("level weights must be strictly positive")
        if abs(tree_sum(weights) - 1.0) > 1e-12:
            raise ValidationError("level weights do not sum to 1")
        weights = weights.copy()
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    def weight(self, word):
        word = validate_word(word, self.N)
        if len(word) != self.level:
            raise ValidationError(f"word of length {len(word)} at level {self.level}")
        return float(self.weights[word_index(word, self.N)])

    def marginal(self, k):
        """Level-k marginal, k <= n."""
        if not 1 <= k <= self.level:
            raise ValidationError(f"marginal level {k} outside 1..{self.level}")
        folded = self.weights.reshape(self.N**k, self.N ** (self.level - k))
        weights = np.array([tree_sum(row) for row in folded])
        return LevelDistribution(k, self.N, weights / tree_sum(weights), self.source)

    def to_frame(self):
        words = [word_to_str(word_at(i, self.N, self.level), self.N) for i in range(self.weights.size)]
        return pd.DataFrame({"word": words, "weight": self.weights})


def gibbs_level_weights(P, n, threads=None, budget=None):
    """weight(w) = Phi(w) / sum_{|v|=n} Phi(v)."""
    values = level_values(P, n, threads, budget)
    total = tree_sum(values)
    return LevelDistribution(n, P.alphabet_size, values / total, P.label)


def total_variation(mu, nu):
    if mu.level != nu.level or mu.N != nu.N:
        raise ValidationError("distributions live on different levels")
    return 0.5 * tree_sum(np.abs(mu.weights - nu.weights))


@dataclass(frozen=True)
class GibbsSpread:
    level: int
    low: float
    high: float

    @property
    def spread(self):
        return self.high / self.low


def gibbs_consistency(P, n, threads=None, budget=None):
    """Range of weight_{n+1}(wj) / weight_n(w) over all |w| = n and symbols j."""
    N = P.alphabet_size
    coarse = gibbs_level_weights(P, n, threads, budget).weights
    fine = gibbs_level_weights(P, n + 1, threads, budget).weights
    ratios = fine.reshape(N**n, N) / coarse[:, None]
    return GibbsSpread(n, float(ratios.min()), float(ratios.max()))


@dataclass(frozen=True, eq=False)
class BernoulliMeasure:
    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise ValidationError("probability vector must be one-dimensional")
        if np.any(p <= 0):
            raise ValidationError(f"Bernoulli weights must be positive, got {p.tolist()}")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValidationError(f"Bernoulli weights sum to {p.sum()!r}, not 1")
        object.__setattr__(self, "p", p)

    @classmethod
    def uniform(cls, N):
        return cls(np.full(N, 1.0 / N))

    @property
    def N(self):
        return self.p.size

    def entropy(self):
        return float(-np.sum(self.p * np.log(self.p)))

    def cylinder_weights(self, n):
        weights = np.ones(1)
        for _ in range(n):
            weights = (weights[:, None] * self.p[None, :]).ravel()
        return LevelDistribution(n, self.N, weights / tree_sum(weights), "bernoulli")


def lyapunov_exponents(T, mu, n, threads=None, budget=None):
    """(1/n) sum_w mu([w]) log sigma_k(A_w), k = 1..d."""
    if mu.N != T.N:
        raise ValidationError("measure and tuple have different alphabets")
    weights = mu.cylinder_weights(n).weights
    logs = np.log(level_spectra(T, n, threads, budget))
    return np.array([tree_sum(weights * logs[:, k]) / n for k in range(T.d)])


def lyapunov_dimension(T, mu, n, tol=1e-3, threads=None, budget=None):
    """
    Bracket the zero of s -> h(mu) + (1/n) sum_w mu([w]) log phi^s(A_w).

    The finite-level Lyapunov term decreases to its limit, so the bracket
    sits above the Lyapunov dimension.
    """
    if mu.N != T.N:
        raise ValidationError("measure and tuple have different alphabets")
    check_contracting(T)
    spectra = level_spectra(T, n, threads, budget)
    weights = mu.cylinder_weights(n).weights
    entropy = mu.entropy()

    def objective(s):
        return entropy + tree_sum(weights * linalg.log_phi_from_spectrum(spectra, s)) / n

    result = bisect(objective, 0.0, 2.0 * T.d, tol, n, "lyapunov")
    logger.info("Lyapunov dimension in [%.6f, %.6f]", result.lo, result.hi)
    return result


def _log_gap(moduli):
    return math.log(moduli[0]) - math.log(moduli[1])


def _witness_gap(first, second):
    return abs(first - second) > settings.WITNESS_TOL * max(1.0, abs(first), abs(second))


@dataclass(frozen=True)
class RatioDiagnostic:
    base_word: tuple
    s: float
    rows: tuple
    asymptote: float

    @property
    def final_gap(self):
        return abs(self.rows[-1][1] - self.asymptote)

    def to_frame(self):
        return pd.DataFrame(list(self.rows), columns=["n", "log_ratio"])

    def to_dict(self, N=None):
        return {
            "word": word_to_str(self.base_word, N),
            "s": self.s,
            "asymptote": self.asymptote,
            "final_gap": self.final_gap,
            "rows": [{"n": n, "log_ratio": r} for n, r in self.rows],
        }


def distinctness_diagnostic(base, iota, s, word, n_max):
    """
    r_n = (1/n) log(Phi^(1)(w^n) / Phi^(2)(w^n)) for n = 1..n_max, with the
    limit (s - 1) log[(l1/l2)(B_w) / (l1/l2)(B_iota(w))].
    """
    word = validate_word(word, base.N)
    phi1, phi2 = factor_pair(base, iota, s)
    own = _log_gap(linalg.eigen_moduli(word_matrix(base, word)))
    other = _log_gap(linalg.eigen_moduli(word_matrix(base, apply_permutation(iota, word))))
    if not _witness_gap(own, other):
        raise NotAWitness(f"eigenvalue ratios of word {word_to_str(word, base.N)} agree with its image")
    rows = []
    for n in range(1, n_max + 1):
        w = power(word, n)
        rows.append((n, math.log(phi1.evaluate(w) / phi2.evaluate(w)) / n))
    return RatioDiagnostic(word, float(s), tuple(rows), (s - 1.0) * (own - other))


def benoist_witness(base, iota, depth):
    """
    First word (by length, then lexicographic) whose top eigenvalue ratio
    differs from that of its image under iota; None up to ``depth``.
    """
    if depth < 1:
        raise ValidationError(f"depth must be >= 1, got {depth}")
    partner = base.permuted(iota)
    for n in range(1, depth + 1):
        own = linalg.eigen_moduli_batch(level_products(base, n))
        other = linalg.eigen_moduli_batch(level_products(partner, n))
        for index in range(own.shape[0]):
            if _witness_gap(_log_gap(own[index]), _log_gap(other[index])):
                word = word_at(index, base.N, n)
                logger.info("eigenvalue-ratio witness %s", word_to_str(word, base.N))
                return word
    return None


@dataclass(frozen=True)
class TVGrowth:
    s: float
    rows: tuple
    non_decreasing: bool

    def to_frame(self):
        return pd.DataFrame(list(self.rows), columns=["n", "total_variation"])


def tv_growth_table(base, iota, s, levels, threads=None, budget=None):
    """Total variation between the two factor level distributions per level."""
    phi1, phi2 = factor_pair(base, iota, s)
    rows = []
    for n in levels:
        mu = gibbs_level_weights(phi1, n, threads, budget)
        nu = gibbs_level_weights(phi2, n, threads, budget)
        rows.append((n, total_variation(mu, nu)))
    values = [tv for _, tv in rows]
    non_decreasing = all(b >= a for a, b in zip(values, values[1:]))
    return TVGrowth(float(s), tuple(rows), non_decreasing)
