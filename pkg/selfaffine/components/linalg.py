"""
Dense Linear Algebra

Singular values, eigenvalue moduli, Kronecker products, exterior powers and
the singular value function phi^s. Matrices are plain ``numpy`` arrays; the
``*_batch`` variants work on stacks of shape (..., d, d) and are what the
level computations use.
"""

import itertools
import logging
import math

import numpy as np
import scipy.linalg
from scipy.special import comb

from . import settings
from .errors import BadRank, ConvergenceFailure, NonFinite, OutOfRangeS, Singular

logger = logging.getLogger(__name__)


def as_matrix(M, name="matrix"):
    """Return M as a square float array, rejecting NaN/Inf entries."""
    arr = np.asarray(M, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFinite(f"{name} has non-finite entries")
    return arr


def as_stack(stack, name="stack"):
    arr = np.asarray(stack, dtype=float)
    if arr.ndim < 2 or arr.shape[-1] != arr.shape[-2]:
        raise ValueError(f"{name} must have shape (..., d, d), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFinite(f"{name} has non-finite entries")
    return arr


def check_invertible(M, tol=settings.INVERTIBILITY_TOL):
    """Raise Singular when |det M| < tol * ||M||^d."""
    M = as_matrix(M)
    d = M.shape[0]
    scale = np.linalg.norm(M, 2) ** d
    det = abs(np.linalg.det(M))
    if scale == 0.0 or det < tol * scale:
        raise Singular(f"matrix is numerically singular (|det|={det:.3e})")
    return M


def singular_values(M):
    """Singular values sorted non-increasing; sigma_1 is the operator norm."""
    M = as_matrix(M)
    return scipy.linalg.svdvals(M)


def singular_values_batch(stack):
    stack = as_stack(stack)
    return np.linalg.svd(stack, compute_uv=False)


def norm(M):
    return float(singular_values(M)[0])


def eigen_moduli(M):
    """Moduli of the eigenvalues of M, sorted non-increasing."""
    M = as_matrix(M)
    try:
        eigenvalues = scipy.linalg.eigvals(M)
    except np.linalg.LinAlgError as e:
        raise ConvergenceFailure(f"eigenvalue solver did not converge: {e}") from e
    return np.sort(np.abs(eigenvalues))[::-1]


def eigen_moduli_batch(stack):
    stack = as_stack(stack)
    try:
        eigenvalues = np.linalg.eigvals(stack)
    except np.linalg.LinAlgError as e:
        raise ConvergenceFailure(f"eigenvalue solver did not converge: {e}") from e
    return -np.sort(-np.abs(eigenvalues), axis=-1)


def kronecker(A, B):
    """Kronecker product in the block layout a_ij * B."""
    return np.kron(as_matrix(A, "A"), as_matrix(B, "B"))


def wedge_basis(d, k):
    """Index sets i_1 < ... < i_k (0-based) of the lexicographic wedge basis."""
    return list(itertools.combinations(range(d), k))


def exterior_power(A, k):
    """
    Matrix of A^{wedge k} in the lexicographic basis e_{i1} ^ ... ^ e_{ik}.

    Entry (I, J) is the k x k minor of A on rows I and columns J. Accepts a
    single matrix or a stack of shape (..., d, d).
    """
    A = as_stack(A, "A")
    d = A.shape[-1]
    if not 1 <= k <= d:
        raise BadRank(f"exterior power k={k} out of range 1..{d}")
    idx = np.array(wedge_basis(d, k))
    rows = idx[:, None, :, None]
    cols = idx[None, :, None, :]
    minors = A[..., rows, cols]
    return np.linalg.det(minors)


def exterior_dimension(d, k):
    return int(comb(d, k, exact=True))


def _check_exponent(s):
    if not np.isfinite(s) or s < 0:
        raise OutOfRangeS(f"exponent s={s} must be a finite non-negative number")


def phi_from_spectrum(spectra, s):
    """
    phi^s from spectra sorted non-increasing along the last axis.

    sigma_1 ... sigma_floor(s) * sigma_ceil(s)^(s - floor(s)) for s < d and
    (sigma_1 ... sigma_d)^(s/d) for s >= d. Substituting eigenvalue moduli for
    singular values gives the periodic-orbit variant.
    """
    _check_exponent(s)
    spectra = np.asarray(spectra, dtype=float)
    d = spectra.shape[-1]
    if s >= d:
        return np.prod(spectra, axis=-1) ** (s / d)
    k = math.floor(s)
    frac = s - k
    value = np.prod(spectra[..., :k], axis=-1)
    if frac > 0:
        value = value * spectra[..., k] ** frac
    return value


def log_phi_from_spectrum(spectra, s):
    _check_exponent(s)
    logs = np.log(np.asarray(spectra, dtype=float))
    d = logs.shape[-1]
    if s >= d:
        return np.sum(logs, axis=-1) * (s / d)
    k = math.floor(s)
    frac = s - k
    value = np.sum(logs[..., :k], axis=-1)
    if frac > 0:
        value = value + frac * logs[..., k]
    return value


def phi_s(M, s):
    """Singular value function phi^s(M) of an invertible matrix."""
    M = check_invertible(M)
    return float(phi_from_spectrum(singular_values(M), s))


def phi_s_exterior(M, s):
    """phi^s through norms of exterior powers (cross-check formula)."""
    _check_exponent(s)
    M = check_invertible(M)
    d = M.shape[0]
    if s >= d:
        return abs(np.linalg.det(M)) ** (s / d)
    lo = math.floor(s)
    hi = math.ceil(s)

    def wedge_norm(k):
        if k == 0:
            return 1.0
        return norm(exterior_power(M, k))

    value = wedge_norm(lo) ** (1 + lo - s)
    if hi != lo:
        value *= wedge_norm(hi) ** (s - lo)
    return float(value)


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def block_basis_change():
    """
    Orthonormal basis of the second exterior power of R^4, as columns in the
    lexicographic basis (e12, e13, e14, e23, e24, e34):

        e12, e34, (e14 - e23)/sqrt2 | e13, e24, (e14 + e23)/sqrt2

    The two groups of three span the blocks preserved by the wedge squares of
    the Kronecker pair diag(a1, a2) (x) R(theta), R(theta) (x) diag(a1, a2).
    """
    r = 1.0 / math.sqrt(2.0)
    Q = np.zeros((6, 6))
    Q[0, 0] = 1.0
    Q[5, 1] = 1.0
    Q[2, 2], Q[3, 2] = r, -r
    Q[1, 3] = 1.0
    Q[4, 4] = 1.0
    Q[2, 5], Q[3, 5] = r, r
    return Q
