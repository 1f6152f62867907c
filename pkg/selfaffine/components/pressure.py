"""
Pressure Estimation

Level sums of a potential, the finite-level pressure P_n = (1/n) log sum Phi,
its running minimum (an upper bound for the limit), periodic-orbit lower
bounds, and the affinity dimension by bisection on s.

Level sums are evaluated on the fixed prefix partition of ``words`` and
reduced by a pairwise tree, so results do not depend on the worker count.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
import pandas as pd

from . import linalg, settings
from .errors import NotContracting, ValidationError
from .potentials import Factor, PhiS
from .words import check_budget, kronecker_tuple, level_products, prefix_partition

logger = logging.getLogger(__name__)


def tree_sum(values):
    """Fan-in 2 reduction over the values zero-padded to a power of two."""
    buf = np.asarray(values, dtype=float).ravel()
    if buf.size == 0:
        return 0.0
    size = 1 << (buf.size - 1).bit_length()
    if size != buf.size:
        buf = np.concatenate([buf, np.zeros(size - buf.size)])
    while buf.size > 1:
        buf = buf[0::2] + buf[1::2]
    return float(buf[0])


def map_level(fn, N, n, threads=None, budget=None):
    """
    Apply ``fn(prefix)`` to every subtree of level n and concatenate the
    results in canonical (lexicographic) order.
    """
    check_budget(N, n, budget)
    prefixes = prefix_partition(N, n)
    workers = min(settings.thread_count(threads), len(prefixes))
    logger.debug("level %d: %d subtrees on %d workers", n, len(prefixes), workers)
    if workers <= 1:
        chunks = [fn(prefix) for prefix in prefixes]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(fn, prefixes))
    return np.concatenate(chunks, axis=0)


def level_values(P, n, threads=None, budget=None):
    """Phi(w) for all |w| = n, lexicographic."""
    return map_level(lambda prefix: P.level_values(n, prefix), P.alphabet_size, n, threads, budget)


def level_sum(P, n, threads=None, budget=None):
    return tree_sum(level_values(P, n, threads, budget))


def level_spectra(T, n, threads=None, budget=None, moduli=False):
    """Singular values (or eigenvalue moduli) of every level-n product."""
    spectrum = linalg.eigen_moduli_batch if moduli else linalg.singular_values_batch
    return map_level(lambda prefix: spectrum(level_products(T, n, prefix)), T.N, n, threads, budget)


@dataclass(frozen=True)
class PressureEstimate:
    level: int
    value: float
    upper: float
    lower: float
    word_count: int
    history: tuple = ()

    def to_dict(self):
        return {
            "level": self.level,
            "value": self.value,
            "upper": self.upper,
            "lower": self.lower,
            "word_count": self.word_count,
            "history": [{"n": m, "value": v} for m, v in self.history],
        }


def level_pressure(P, n, threads=None, budget=None):
    """
    P_n together with min_{m <= n} P_m and the periodic-orbit lower bound.
    """
    if n < 1:
        raise ValidationError(f"level must be >= 1, got {n}")
    N = P.alphabet_size
    check_budget(N, n, budget)
    logger.info("level pressure of %s up to n=%d (%d words)", P.label, n, N**n)
    history = []
    for m in range(1, n + 1):
        total = level_sum(P, m, threads, budget)
        history.append((m, math.log(total) / m))
    value = history[-1][1]
    upper = min(v for _, v in history)
    lower = lower_bound_periodic(P, n, threads, budget)
    return PressureEstimate(
        level=n,
        value=value,
        upper=upper,
        lower=lower,
        word_count=N**n,
        history=tuple(history),
    )


def lower_bound_periodic(P, n, threads=None, budget=None):
    """
    max over |w| = n of lim_k (1/(kn)) log Phi(w^k): eigenvalue moduli in
    place of singular values. Periodic measures carry no entropy, so this
    stays below the pressure by up to log N.
    """
    rates = map_level(lambda prefix: P.periodic_log_rates(n, prefix), P.alphabet_size, n, threads, budget)
    return float(np.max(rates))


def subadditivity_defects(estimate):
    """(n, m, n P_n + m P_m - (n+m) P_{n+m}) for every pair within the history."""
    values = dict(estimate.history)
    defects = []
    for n in values:
        for m in values:
            if m < n or n + m not in values:
                continue
            slack = n * values[n] + m * values[m] - (n + m) * values[n + m]
            defects.append((n, m, slack))
    return defects


@dataclass(frozen=True)
class DimensionResult:
    """
    Bisection bracket [lo, hi] for the zero of a decreasing function of s.

    The objective at lo is >= 0 and at hi is <= 0. ``evaluations`` holds the
    (s, objective) pairs visited; ``monotone`` records whether they were
    non-increasing in s.
    """

    lo: float
    hi: float
    level: int
    iterations: int
    kind: str = "affinity"
    monotone: bool = True
    evaluations: tuple = ()
    lower_objective: float = field(default=None)

    @property
    def interval(self):
        return (self.lo, self.hi)

    @property
    def midpoint(self):
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self):
        return self.hi - self.lo

    def to_dict(self):
        return {
            "kind": self.kind,
            "interval": [self.lo, self.hi],
            "level": self.level,
            "iterations": self.iterations,
            "monotone": self.monotone,
            "lower_objective": self.lower_objective,
        }


def is_non_increasing(evaluations, slack=1e-12):
    points = sorted(evaluations)
    return all(b[1] <= a[1] + slack * max(1.0, abs(a[1])) for a, b in zip(points, points[1:]))


def bisect(objective, lo, hi, tol, level, kind):
    """Bisection on a non-increasing objective with objective(lo) >= 0 >= objective(hi)."""
    if tol <= 0:
        raise ValidationError(f"tolerance must be positive, got {tol}")
    evaluations = [(lo, objective(lo)), (hi, objective(hi))]
    if evaluations[0][1] < 0:
        raise ValidationError(f"{kind} objective is negative at s={lo:g}: {evaluations[0][1]:.6g}")
    if evaluations[1][1] > 0:
        raise NotContracting(f"{kind} objective is positive at s={hi:g}: {evaluations[1][1]:.6g}")
    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        value = objective(mid)
        evaluations.append((mid, value))
        if value >= 0:
            lo = mid
        else:
            hi = mid
        iterations += 1
        logger.debug("%s bisection step %d: s=%.6f value=%.6g", kind, iterations, mid, value)
    monotone = is_non_increasing(evaluations)
    if not monotone:
        logger.warning("%s objective was not monotone on the evaluated points", kind)
    return DimensionResult(
        lo=lo,
        hi=hi,
        level=level,
        iterations=iterations,
        kind=kind,
        monotone=monotone,
        evaluations=tuple(evaluations),
    )


def check_contracting(T):
    norms = T.norms()
    if np.any(norms >= 1):
        worst = int(np.argmax(norms)) + 1
        raise NotContracting(f"||A_{worst}|| = {norms[worst - 1]:.6g} >= 1")
    return norms


def affinity_dimension(T, n, tol=1e-3, threads=None, budget=None):
    """
    Bracket the zero of s -> P_n(phi^s) by bisection on [0, 2d].

    P_n over-estimates the limit pressure, so the bracket over-estimates the
    affinity dimension by the finite-level gap. ``lower_objective`` is the
    periodic-orbit bound at the bracket's lower end.
    """
    check_contracting(T)
    spectra = level_spectra(T, n, threads, budget)
    moduli = level_spectra(T, n, threads, budget, moduli=True)
    logger.info("affinity dimension: %d maps in dimension %d at level %d", T.N, T.d, n)

    def objective(s):
        return math.log(tree_sum(linalg.phi_from_spectrum(spectra, s))) / n

    result = bisect(objective, 0.0, 2.0 * T.d, tol, n, "affinity")
    lower = float(np.max(linalg.log_phi_from_spectrum(moduli, result.lo))) / n
    logger.info("affinity dimension in [%.6f, %.6f]", result.lo, result.hi)
    return replace(result, lower_objective=lower)


@dataclass(frozen=True)
class PressureEqualityReport:
    level: int
    S1: float
    S2: float
    S: float
    symmetric: bool
    sandwich: bool

    @property
    def relative_asymmetry(self):
        return abs(self.S1 - self.S2) / max(self.S1, self.S2)

    def to_dict(self):
        return {
            "level": self.level,
            "S1": self.S1,
            "S2": self.S2,
            "S": self.S,
            "symmetric": self.symmetric,
            "sandwich": self.sandwich,
            "relative_asymmetry": self.relative_asymmetry,
        }


def pressure_equality_check(P1, P2, n, phi=None, tol=1e-12, threads=None, budget=None):
    """
    Level-n sums S1, S2 of the two factor potentials and S of phi^s on the
    Kronecker tuple; checks S1 = S2 and (S1 + S2)/2 <= S <= S1 + S2.
    """
    if P1.alphabet_size != P2.alphabet_size:
        raise ValidationError("potentials must share the alphabet")
    if phi is None:
        if not isinstance(P1, Factor):
            raise ValidationError("phi^s potential required unless P1 is a factor potential")
        phi = PhiS(kronecker_tuple(P1.base, P1.iota), P1.s)
    S1 = level_sum(P1, n, threads, budget)
    S2 = level_sum(P2, n, threads, budget)
    S = level_sum(phi, n, threads, budget)
    symmetric = abs(S1 - S2) <= tol * max(S1, S2)
    sandwich = 0.5 * (S1 + S2) <= S * (1 + tol) and S <= (S1 + S2) * (1 + tol)
    return PressureEqualityReport(n, S1, S2, S, bool(symmetric), bool(sandwich))


@dataclass(frozen=True)
class PressureCurve:
    level: int
    s: tuple
    values: tuple
    monotone: bool

    def to_frame(self):
        return pd.DataFrame({"s": self.s, "pressure": self.values})


def pressure_curve(T, n, grid, threads=None, budget=None):
    """P_n(phi^s) over a grid of s, from one set of level spectra."""
    spectra = level_spectra(T, n, threads, budget)
    grid = [float(s) for s in grid]
    values = [math.log(tree_sum(linalg.phi_from_spectrum(spectra, s))) / n for s in grid]
    monotone = is_non_increasing(list(zip(grid, values)))
    return PressureCurve(n, tuple(grid), tuple(values), monotone)


def four_map_bounds(alpha1, alpha2):
    """
    Closed-form bounds for the four-map construction: P(phi^1) is at least
    (1/2) log(16 a1 a2) and P(phi^2) at most 2 log(2 a1).
    """
    return {
        "phi1_lower": 0.5 * math.log(16.0 * alpha1 * alpha2),
        "phi2_upper": 2.0 * math.log(2.0 * alpha1),
    }
