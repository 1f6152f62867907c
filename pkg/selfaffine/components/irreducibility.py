"""
Irreducibility Witnesses

Numeric searches for the structures that break (strong) irreducibility:
common invariant subspaces, finite invariant unions of subspaces, failure of
quasi-multiplicativity, and spectral obstructions to projective conjugacy.
A search that finds nothing proves nothing; results say "no witness found".
"""

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from . import ids, linalg, settings
from .errors import ValidationError
from .words import apply_permutation, check_budget, level_products, power, word_at, word_matrix, word_to_str

logger = logging.getLogger(__name__)

# Orbits larger than this are treated as infinite
ORBIT_CAP = 24


@dataclass(frozen=True, eq=False)
class SubspaceWitness:
    """
    Orthonormal basis (d x k) of a candidate subspace and the largest
    principal angle between A_i V and V over the generators. In finite_union
    mode ``members`` holds the bases of the whole invariant orbit.
    """

    basis: np.ndarray
    residual: float
    word: tuple = ()
    mode: str = ids.MODE_SINGLE
    members: tuple = field(default=())

    @property
    def dimension(self):
        return self.basis.shape[1]

    def to_dict(self, N=None):
        return {
            "mode": self.mode,
            "dimension": self.dimension,
            "residual": self.residual,
            "word": word_to_str(self.word, N),
            "basis": self.basis.T.tolist(),
            "members": len(self.members) or 1,
        }


def principal_angle_residual(T, V):
    """max_i of the largest principal angle between A_i V and V."""
    V = np.asarray(V, dtype=float)
    worst = 0.0
    for A in T.matrices:
        angles = scipy.linalg.subspace_angles(A @ V, V)
        worst = max(worst, float(np.max(angles)))
    return worst


def _same_subspace(U, V, tol):
    if U.shape[1] != V.shape[1]:
        return False
    return float(np.max(scipy.linalg.subspace_angles(U, V))) <= tol


def _eigen_clusters(M):
    """Real orthonormal spans of the eigenvector groups of M, one per eigenvalue cluster."""
    eigenvalues, vectors = scipy.linalg.eig(M)
    d = eigenvalues.size
    parent = list(range(d))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    scale = max(1.0, float(np.max(np.abs(eigenvalues))))
    for a, b in itertools.combinations(range(d), 2):
        close = abs(eigenvalues[a] - eigenvalues[b]) <= settings.EIGEN_CLUSTER_TOL * scale
        conjugate = abs(eigenvalues[a] - np.conj(eigenvalues[b])) <= settings.EIGEN_CLUSTER_TOL * scale
        if close or conjugate:
            parent[find(a)] = find(b)

    groups = {}
    for k in range(d):
        groups.setdefault(find(k), []).append(k)
    spans = []
    for members in groups.values():
        block = vectors[:, members]
        spans.append(scipy.linalg.orth(np.hstack([block.real, block.imag])))
    return spans


def _candidates(T, depth):
    """Yield (word, basis) for every proper span of eigen-clusters of word products."""
    d = T.d
    for n in range(1, depth + 1):
        check_budget(T.N, n)
        products = level_products(T, n)
        for index, M in enumerate(products):
            spans = _eigen_clusters(M)
            for r in range(1, len(spans)):
                for subset in itertools.combinations(spans, r):
                    basis = scipy.linalg.orth(np.hstack(subset))
                    if 0 < basis.shape[1] < d:
                        yield word_at(index, T.N, n), basis


def invariant_subspaces(T, depth, tol=settings.ANGLE_TOL):
    """Every distinct candidate subspace with residual <= tol."""
    found = []
    for word, basis in _candidates(T, depth):
        if any(_same_subspace(basis, w.basis, tol) for w in found):
            continue
        residual = principal_angle_residual(T, basis)
        if residual <= tol:
            logger.info("invariant %d-dimensional subspace from word %s", basis.shape[1], word_to_str(word, T.N))
            found.append(SubspaceWitness(basis, residual, word))
    return found


def _orbit(T, basis, depth, tol):
    """Orbit of a subspace under the generators, or None if it does not close."""
    members = [basis]
    frontier = [basis]
    for _ in range(depth):
        fresh = []
        for U in frontier:
            for A in T.matrices:
                image = scipy.linalg.orth(A @ U)
                if any(_same_subspace(image, V, tol) for V in members):
                    continue
                members.append(image)
                fresh.append(image)
                if len(members) > ORBIT_CAP:
                    return None
        if not fresh:
            return members
        frontier = fresh
    return None


def invariant_subspace_search(T, mode=ids.MODE_SINGLE, depth=4, tol=settings.ANGLE_TOL):
    """
    First invariant subspace (single) or finite invariant union of subspaces
    (finite_union) found among eigen-cluster spans of words up to ``depth``.
    """
    if depth < 1:
        raise ValidationError(f"depth must be >= 1, got {depth}")
    if mode == ids.MODE_SINGLE:
        for word, basis in _candidates(T, depth):
            residual = principal_angle_residual(T, basis)
            if residual <= tol:
                return SubspaceWitness(basis, residual, word)
        return None
    if mode != ids.MODE_FINITE_UNION:
        raise ValidationError(f"unknown search mode {mode!r}")

    tried = []
    for word, basis in _candidates(T, depth):
        if any(_same_subspace(basis, V, tol) for V in tried):
            continue
        tried.append(basis)
        members = _orbit(T, basis, depth, tol)
        if members is None:
            continue
        residual = max(
            min(float(np.max(scipy.linalg.subspace_angles(scipy.linalg.orth(A @ U), V))) for V in members)
            for U in members
            for A in T.matrices
        )
        logger.info("invariant union of %d subspaces from word %s", len(members), word_to_str(word, T.N))
        return SubspaceWitness(basis, residual, word, ids.MODE_FINITE_UNION, tuple(members))
    return None


@dataclass(frozen=True)
class QMProfile:
    """ratio_n = max_{|k| <= n0} phi^s(A_{1^n} A_k A_{2^n}) / (phi^s(A_{1^n}) phi^s(A_{2^n}))."""

    s: float
    n0: int
    rows: tuple

    def decay_slope(self):
        n = np.array([row[0] for row in self.rows], dtype=float)
        logs = np.log([row[1] for row in self.rows])
        return float(np.polyfit(n, logs, 1)[0])

    def to_frame(self):
        return pd.DataFrame(list(self.rows), columns=["n", "ratio"])


def _connecting_products(T, n0):
    stacks = [np.eye(T.d)[None, :, :]]
    for m in range(1, n0 + 1):
        stacks.append(level_products(T, m))
    return np.concatenate(stacks, axis=0)


def quasi_multiplicativity_profile(T, s, n0, n_max):
    if T.N < 2:
        raise ValidationError("quasi-multiplicativity profile needs symbols 1 and 2")
    if n0 < 0 or n_max < 1:
        raise ValidationError(f"need n0 >= 0 and n_max >= 1, got n0={n0}, n_max={n_max}")
    check_budget(T.N, n0)
    connectors = _connecting_products(T, n0)
    rows = []
    for n in range(1, n_max + 1):
        left = word_matrix(T, power((1,), n))
        right = word_matrix(T, power((2,), n))
        joined = np.matmul(np.matmul(left[None, :, :], connectors), right[None, :, :])
        best = float(np.max(linalg.phi_from_spectrum(linalg.singular_values_batch(joined), s)))
        rows.append((n, best / (linalg.phi_s(left, s) * linalg.phi_s(right, s))))
    return QMProfile(float(s), n0, tuple(rows))


# Rank-one coordinate projector on R^2
_P = np.array([[1.0, 0.0], [0.0, 0.0]])
_RANK_TOL = 1e-10


def kronecker_intersection_check(X1, X2):
    """
    (rank of (P x I)(X1 x X2)(I x P), rank of (X1 x X2)(I x P),
    dim of ker(P x I) intersected with (X1 x X2) im(I x P)).
    """
    X1 = linalg.check_invertible(X1)
    X2 = linalg.check_invertible(X2)
    if X1.shape != (2, 2) or X2.shape != (2, 2):
        raise ValidationError("kronecker_intersection_check expects 2 x 2 matrices")
    eye = np.eye(2)
    M = np.kron(X1, X2)
    left = np.kron(_P, eye)
    right = np.kron(eye, _P)

    def rank(A):
        return int(np.linalg.matrix_rank(A, tol=_RANK_TOL * max(1.0, np.linalg.norm(A, 2))))

    rank_a = rank(left @ M @ right)
    rank_b = rank(M @ right)
    U2 = scipy.linalg.null_space(left)
    V1 = scipy.linalg.orth(right)
    image = M @ V1
    kernel = scipy.linalg.null_space(np.hstack([U2, -image]), rcond=_RANK_TOL)
    return rank_a, rank_b, int(kernel.shape[1])


def projective_spectrum(M):
    """Eigenvalues scaled to unit |det|; defined up to a global sign."""
    M = linalg.check_invertible(M)
    d = M.shape[0]
    eigenvalues = scipy.linalg.eigvals(M)
    return eigenvalues / abs(np.linalg.det(M)) ** (1.0 / d)


def _spectra_match(a, b, tol=settings.EIGEN_CLUSTER_TOL):
    for sign in (1.0, -1.0):
        cost = np.abs(a[:, None] - sign * b[None, :])
        rows, cols = linear_sum_assignment(cost)
        if np.max(cost[rows, cols]) <= tol * max(1.0, float(np.max(np.abs(a)))):
            return True
    return False


@dataclass(frozen=True)
class ObstructionReport:
    depth: int
    conjugate_word: tuple = None
    dual_word: tuple = None

    @property
    def conjugate_status(self):
        return "obstructed" if self.conjugate_word is not None else "inconclusive"

    @property
    def dual_status(self):
        return "obstructed" if self.dual_word is not None else "inconclusive"

    @property
    def certified(self):
        return self.conjugate_word is not None and self.dual_word is not None

    def to_dict(self, N=None):
        def describe(word):
            if word is None:
                return f"no obstruction up to depth {self.depth}"
            return word_to_str(word, N)

        return {
            "depth": self.depth,
            "conjugacy": {"status": self.conjugate_status, "word": describe(self.conjugate_word)},
            "inverse_transpose": {"status": self.dual_status, "word": describe(self.dual_word)},
            "certified": self.certified,
        }


def conjugacy_obstruction(base, iota, depth):
    """
    Compare the projective spectrum of B_w with those of B_iota(w) and of
    (B_iota(w)^{-1})^T; differing spectra rule out the respective
    conjugacy for that word.
    """
    if depth < 1:
        raise ValidationError(f"depth must be >= 1, got {depth}")
    conjugate_word = None
    dual_word = None
    for n in range(1, depth + 1):
        for index, own in enumerate(level_products(base, n)):
            word = word_at(index, base.N, n)
            image = word_matrix(base, apply_permutation(iota, word))
            spectrum = projective_spectrum(own)
            if conjugate_word is None and not _spectra_match(spectrum, projective_spectrum(image)):
                conjugate_word = word
            if dual_word is None and not _spectra_match(spectrum, projective_spectrum(np.linalg.inv(image).T)):
                dual_word = word
            if conjugate_word is not None and dual_word is not None:
                return ObstructionReport(depth, conjugate_word, dual_word)
    return ObstructionReport(depth, conjugate_word, dual_word)
