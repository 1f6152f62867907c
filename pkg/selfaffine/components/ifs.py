"""
Affine Iterated Function Systems

Assembly of T_i x = A_i x + v_i, the ball-based strong separation
certificate, attractor sampling through the coding map, and the end-to-end
run for the four-map construction with two distinct equilibrium states.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from . import linalg, settings
from .equilibrium import (
    BernoulliMeasure,
    benoist_witness,
    distinctness_diagnostic,
    lyapunov_dimension,
    tv_growth_table,
)
from .errors import HypothesisViolation, NotContracting, ValidationError
from .potentials import PhiS
from .pressure import affinity_dimension, four_map_bounds, level_pressure
from .words import MatrixTuple, SymbolPermutation, kronecker_tuple, word_to_str

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class AffineIFS:
    linear: MatrixTuple
    translations: np.ndarray

    def __post_init__(self):
        translations = np.asarray(self.translations, dtype=float)
        if translations.shape != (self.linear.N, self.linear.d):
            raise ValidationError(
                f"expected {self.linear.N} translations in R^{self.linear.d}, got shape {translations.shape}"
            )
        if not np.all(np.isfinite(translations)):
            raise ValidationError("translations have non-finite entries")
        norms = self.linear.norms()
        if np.any(norms >= 1):
            raise NotContracting(f"max ||A_i|| = {norms.max():.6g} >= 1")
        translations = translations.copy()
        translations.setflags(write=False)
        object.__setattr__(self, "translations", translations)

    @property
    def N(self):
        return self.linear.N

    @property
    def d(self):
        return self.linear.d

    @property
    def contraction(self):
        return float(self.linear.norms().max())

    def apply(self, symbol, x):
        return self.linear[symbol] @ np.asarray(x, dtype=float) + self.translations[symbol - 1]


@dataclass(frozen=True, eq=False)
class SeparationCertificate:
    """
    Ball test for strong separation: each image ball T_i B(c, r) lies in
    B(c, r) and the image balls are pairwise disjoint. A failing test does
    not show that strong separation fails.
    """

    center: np.ndarray
    radius: float
    image_centers: np.ndarray
    image_radii: np.ndarray
    passed: bool
    violation: str = None

    def to_dict(self):
        return {
            "verdict": "pass" if self.passed else "fail",
            "violation": self.violation,
            "center": self.center.tolist(),
            "radius": self.radius,
            "image_centers": self.image_centers.tolist(),
            "image_radii": self.image_radii.tolist(),
            "note": "sufficient condition only; a failure does not rule out strong separation",
        }


def separation_certificate(S, center, radius):
    center = np.asarray(center, dtype=float)
    if center.shape != (S.d,):
        raise ValidationError(f"center must lie in R^{S.d}")
    if not radius > 0:
        raise ValidationError(f"radius must be positive, got {radius}")
    norms = S.linear.norms()
    centers = np.einsum("nij,j->ni", S.linear.matrices, center) + S.translations
    radii = norms * radius

    violation = None
    for i in range(S.N):
        if np.linalg.norm(centers[i] - center) + radii[i] > radius:
            violation = f"containment: image of map {i + 1} leaves the ball"
            break
    if violation is None:
        for i in range(S.N):
            for j in range(i + 1, S.N):
                if not np.linalg.norm(centers[i] - centers[j]) > radii[i] + radii[j]:
                    violation = f"disjointness: images of maps {i + 1} and {j + 1} meet"
                    break
            if violation is not None:
                break
    passed = violation is None
    logger.info("separation certificate: %s", "pass" if passed else violation)
    return SeparationCertificate(center, float(radius), centers, radii, passed, violation)


def attractor_radius(S):
    """R = max ||v_i|| / (1 - max ||A_i||); the attractor lies in B(0, R)."""
    return float(np.linalg.norm(S.translations, axis=1).max() / (1.0 - S.contraction))


def coding_map(S, words):
    """T_{w_1} o ... o T_{w_k}(0) for each row of ``words`` (symbols 1..N)."""
    words = np.atleast_2d(np.asarray(words, dtype=int))
    if words.min() < 1 or words.max() > S.N:
        raise ValidationError(f"symbols outside 1..{S.N}")
    points = np.zeros((words.shape[0], S.d))
    for k in range(words.shape[1] - 1, -1, -1):
        index = words[:, k] - 1
        points = np.einsum("mij,mj->mi", S.linear.matrices[index], points) + S.translations[index]
    return points


@dataclass(frozen=True, eq=False)
class AttractorSample:
    points: np.ndarray
    depth: int
    seed: int
    truncation_bound: float

    def to_frame(self):
        return pd.DataFrame(self.points, columns=[f"x{k + 1}" for k in range(self.points.shape[1])])


def attractor_sample(S, depth, count, seed=0, threads=None):
    """
    ``count`` points T_{x_1..x_depth}(0) for uniform random words. Words are
    drawn in fixed chunks, each from its own child of the seed, so the points
    do not depend on the worker count.
    """
    if depth < 1 or count < 1:
        raise ValidationError(f"need depth >= 1 and count >= 1, got {depth}, {count}")
    sizes = [min(settings.SAMPLE_CHUNK, count - start) for start in range(0, count, settings.SAMPLE_CHUNK)]
    children = np.random.SeedSequence(seed).spawn(len(sizes))

    def chunk(job):
        size, child = job
        rng = np.random.default_rng(child)
        return coding_map(S, rng.integers(1, S.N + 1, size=(size, depth)))

    workers = min(settings.thread_count(threads), len(sizes))
    if workers <= 1:
        parts = [chunk(job) for job in zip(sizes, children)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(chunk, zip(sizes, children)))
    bound = S.contraction**depth * attractor_radius(S)
    return AttractorSample(np.concatenate(parts, axis=0), depth, seed, bound)


# Translations of the four-map construction; pairwise distance 2
FOUR_MAP_TRANSLATIONS = np.array(
    [
        [1.0, 0.0, 1.0 / math.sqrt(2.0), 0.0],
        [-1.0, 0.0, 1.0 / math.sqrt(2.0), 0.0],
        [0.0, 1.0, -1.0 / math.sqrt(2.0), 0.0],
        [0.0, -1.0, -1.0 / math.sqrt(2.0), 0.0],
    ]
)
FOUR_MAP_RADIUS = 1.0 + math.sqrt(1.5)
# Smallest last-level total variation the pipeline accepts
TV_FLOOR = 0.05


@dataclass(frozen=True, eq=False)
class FourMapSystem:
    """B = (D, D, R, R), iota = (13)(24), A_i = B_i (x) B_iota(i) with the fixed translations."""

    alpha1: float
    alpha2: float
    theta: float
    base: MatrixTuple
    iota: SymbolPermutation
    ifs: AffineIFS
    radius: float = FOUR_MAP_RADIUS


def check_four_map_hypotheses(alpha1, alpha2, theta):
    if not 0 < alpha2 < alpha1:
        raise HypothesisViolation(f"need 0 < alpha2 < alpha1, got alpha1={alpha1}, alpha2={alpha2}")
    if not alpha1 < 1.0 / FOUR_MAP_RADIUS:
        raise HypothesisViolation(f"need alpha1 < 1/(1+sqrt(3/2)) = {1.0 / FOUR_MAP_RADIUS:.6f}, got {alpha1}")
    if not alpha1 * alpha2 > 1.0 / 16.0:
        raise HypothesisViolation(f"need alpha1*alpha2 > 1/16, got {alpha1 * alpha2:.6g}")
    quarter_turns = theta / (math.pi / 2.0)
    if abs(quarter_turns - round(quarter_turns)) < 1e-12:
        raise HypothesisViolation(f"theta={theta} is a multiple of pi/2")


def theorem2_fixture(alpha1=0.44, alpha2=0.2, theta=1.0):
    D = np.diag([alpha1, alpha2])
    R = linalg.rotation(theta)
    base = MatrixTuple.from_list([D, D, R, R])
    iota = SymbolPermutation((3, 4, 1, 2))
    ifs = AffineIFS(kronecker_tuple(base, iota), FOUR_MAP_TRANSLATIONS)
    return FourMapSystem(alpha1, alpha2, theta, base, iota, ifs)


@dataclass(frozen=True)
class PipelineReport:
    parameters: dict
    items: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(item["passed"] for item in self.items.values())

    def to_dict(self):
        return {"parameters": self.parameters, "passed": self.passed, "items": self.items}


def theorem2_pipeline(alpha1, alpha2, theta, n, tol=1e-3, threads=None, budget=None):
    """
    Run every finite-level check for the four-map construction: pressure
    signs, the dimension bracket, separation, spectral asymmetry of the two
    factor equilibrium states, and their total-variation growth.
    """
    check_four_map_hypotheses(alpha1, alpha2, theta)
    system = theorem2_fixture(alpha1, alpha2, theta)
    A = system.ifs.linear
    bounds = four_map_bounds(alpha1, alpha2)
    items = {}

    phi1 = level_pressure(PhiS(A, 1.0), n, threads, budget)
    items["pressure_phi1"] = {
        "passed": bounds["phi1_lower"] > 0 and phi1.value >= bounds["phi1_lower"],
        "bound": bounds["phi1_lower"],
        "estimate": phi1.to_dict(),
    }
    phi2 = level_pressure(PhiS(A, 2.0), n, threads, budget)
    items["pressure_phi2"] = {
        "passed": bounds["phi2_upper"] < 0 and all(v <= bounds["phi2_upper"] + 1e-9 for _, v in phi2.history),
        "bound": bounds["phi2_upper"],
        "estimate": phi2.to_dict(),
    }

    dimension = affinity_dimension(A, n, tol, threads, budget)
    items["affinity_dimension"] = {
        "passed": 1.0 < dimension.lo and dimension.hi < 2.0,
        **dimension.to_dict(),
    }

    certificate = separation_certificate(system.ifs, np.zeros(4), system.radius)
    items["separation"] = {"passed": certificate.passed, **certificate.to_dict()}

    s = dimension.midpoint
    witness = benoist_witness(system.base, system.iota, depth=2)
    distinct = {"passed": False, "witness": None, "s": s}
    if witness is not None:
        diagnostic = distinctness_diagnostic(system.base, system.iota, s, witness, 3 * n)
        distinct.update(
            passed=diagnostic.final_gap <= 0.1 * abs(diagnostic.asymptote),
            witness=word_to_str(witness, system.base.N),
            diagnostic=diagnostic.to_dict(system.base.N),
        )
    items["distinct_equilibria"] = distinct

    levels = list(range(2, n + 1, 2)) or [n]
    growth = tv_growth_table(system.base, system.iota, s, levels, threads, budget)
    items["total_variation"] = {
        "passed": growth.non_decreasing and growth.rows[-1][1] > TV_FLOOR,
        "non_decreasing": growth.non_decreasing,
        "rows": [{"n": level, "total_variation": tv} for level, tv in growth.rows],
    }

    lyapunov = lyapunov_dimension(A, BernoulliMeasure.uniform(A.N), n, tol, threads, budget)
    items["lyapunov_dimension"] = {
        "passed": lyapunov.hi <= dimension.hi + tol,
        **lyapunov.to_dict(),
        "hausdorff": "equals the Lyapunov dimension for almost every translation tuple; not verified by computation",
    }

    report = PipelineReport({"alpha1": alpha1, "alpha2": alpha2, "theta": theta, "level": n, "tol": tol}, items)
    logger.info("four-map pipeline: %s", "all checks passed" if report.passed else "some checks failed")
    return report
