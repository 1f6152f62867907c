import math

import numpy as np
import pytest

from selfaffine.components import data_utils, ids, linalg
from selfaffine.components.ifs import theorem2_fixture
from selfaffine.components.words import MatrixTuple, SymbolPermutation, kronecker_tuple

ALPHA1 = 0.44
ALPHA2 = 0.2
THETA = 1.0


def random_matrix(rng, d, low=0.3, high=1.5):
    """Q1 diag(sigma) Q2 with singular values drawn from [low, high]."""
    q1, _ = np.linalg.qr(rng.normal(size=(d, d)))
    q2, _ = np.linalg.qr(rng.normal(size=(d, d)))
    return q1 @ np.diag(rng.uniform(low, high, size=d)) @ q2


def relative_close(a, b, tol):
    return abs(a - b) <= tol * max(abs(a), abs(b))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def thm1_base():
    return data_utils.thm1_base(ALPHA1, ALPHA2, THETA)


@pytest.fixture
def swap():
    return SymbolPermutation.swap()


@pytest.fixture
def thm1_tuple(thm1_base, swap):
    return kronecker_tuple(thm1_base, swap)


@pytest.fixture
def thm2():
    return theorem2_fixture(ALPHA1, ALPHA2, THETA)


@pytest.fixture
def eq1_tuple():
    return data_utils.load_fixture(ids.FIXTURE_EQ1).linear


@pytest.fixture
def halves():
    """Two similarities of ratio 1/2 in the plane."""
    return MatrixTuple.from_list([0.5 * np.eye(2), 0.5 * np.eye(2)])


@pytest.fixture
def quarter_halves():
    """Four similarities of ratio 1/2 in the plane."""
    return MatrixTuple.from_list([0.5 * np.eye(2)] * 4)


@pytest.fixture
def rotation():
    return linalg.rotation(THETA)


@pytest.fixture
def log_ratio():
    return math.log(ALPHA1 / ALPHA2)
