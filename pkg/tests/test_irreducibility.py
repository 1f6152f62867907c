import itertools
import math

import numpy as np
import pytest
import scipy.linalg

from conftest import ALPHA1, ALPHA2, random_matrix
from selfaffine.components import ids, irreducibility, linalg
from selfaffine.components.errors import Singular, ValidationError
from selfaffine.components.words import MatrixTuple, SymbolPermutation


def test_residual_of_coordinate_lines():
    T = MatrixTuple.from_list([np.diag([0.5, 0.25]), np.array([[0.5, 0.1], [0.0, 0.5]])])
    e1 = np.array([[1.0], [0.0]])
    e2 = np.array([[0.0], [1.0]])
    assert irreducibility.principal_angle_residual(T, e1) == pytest.approx(0.0, abs=1e-15)
    assert irreducibility.principal_angle_residual(T, e2) > 0.1


def test_single_mode_finds_a_common_eigenline():
    T = MatrixTuple.from_list([np.diag([0.5, 0.25]), np.array([[0.5, 0.1], [0.0, 0.5]])])
    witness = irreducibility.invariant_subspace_search(T, ids.MODE_SINGLE, depth=1)
    assert witness is not None
    assert witness.dimension == 1
    assert abs(witness.basis[0, 0]) == pytest.approx(1.0)
    assert witness.to_dict(2)["mode"] == ids.MODE_SINGLE


def test_second_exterior_powers_split_into_two_blocks(thm1_tuple):
    wedge = thm1_tuple.exterior_power(2)
    found = [w for w in irreducibility.invariant_subspaces(wedge, depth=4) if w.dimension == 3]
    assert all(w.residual <= 1e-8 for w in found)
    np.testing.assert_allclose(found[0].basis.T @ found[0].basis, np.eye(3), atol=1e-10)
    pairs = [
        (U, V)
        for U, V in itertools.combinations(found, 2)
        if np.linalg.matrix_rank(np.hstack([U.basis, V.basis]), tol=1e-8) == 6
    ]
    assert pairs
    Q = linalg.block_basis_change()
    U, V = pairs[0]
    blocks = [Q[:, :3], Q[:, 3:]]
    for witness in (U, V):
        assert min(np.max(scipy.linalg.subspace_angles(witness.basis, B)) for B in blocks) <= 1e-8


def test_single_mode_on_the_exterior_square(thm1_tuple):
    witness = irreducibility.invariant_subspace_search(thm1_tuple.exterior_power(2), depth=4)
    assert witness is not None
    assert witness.residual <= 1e-8


def test_irreducible_triple_has_only_a_finite_invariant_union(eq1_tuple):
    assert irreducibility.invariant_subspace_search(eq1_tuple, ids.MODE_SINGLE, depth=3) is None
    witness = irreducibility.invariant_subspace_search(eq1_tuple, ids.MODE_FINITE_UNION, depth=3)
    assert witness is not None
    assert witness.mode == ids.MODE_FINITE_UNION
    assert len(witness.members) == 3
    assert witness.residual <= 1e-8
    assert witness.to_dict(2)["members"] == 3


def test_search_validates_arguments(eq1_tuple):
    with pytest.raises(ValidationError):
        irreducibility.invariant_subspace_search(eq1_tuple, depth=0)
    with pytest.raises(ValidationError):
        irreducibility.invariant_subspace_search(eq1_tuple, mode="everything")


def test_similarities_are_quasi_multiplicative(rotation):
    T = MatrixTuple.from_list([0.5 * rotation, 0.3 * np.eye(2)])
    profile = irreducibility.quasi_multiplicativity_profile(T, 1.5, 2, 6)
    np.testing.assert_allclose([ratio for _, ratio in profile.rows], 1.0, rtol=1e-12)


def test_kronecker_fixture_is_not_quasi_multiplicative(thm1_tuple):
    profile = irreducibility.quasi_multiplicativity_profile(thm1_tuple, 2.0, 3, 10)
    ratios = dict(profile.rows)
    assert ratios[10] < 0.1 * ratios[2]
    expected = math.log(ALPHA2 / ALPHA1)
    assert abs(profile.decay_slope() - expected) <= 0.25 * abs(expected)
    assert list(profile.to_frame().columns) == ["n", "ratio"]


def test_quasi_multiplicativity_profile_validation(thm1_tuple):
    with pytest.raises(ValidationError):
        irreducibility.quasi_multiplicativity_profile(thm1_tuple, 2.0, -1, 5)
    with pytest.raises(ValidationError):
        irreducibility.quasi_multiplicativity_profile(MatrixTuple.from_list([0.5 * np.eye(2)]), 1.0, 1, 3)


def test_kronecker_intersection_on_random_pairs(rng):
    for _ in range(1000):
        X1, X2 = random_matrix(rng, 2), random_matrix(rng, 2)
        assert irreducibility.kronecker_intersection_check(X1, X2) == (1, 2, 1)


def test_kronecker_intersection_on_the_fixture(thm1_base):
    assert irreducibility.kronecker_intersection_check(thm1_base[1], thm1_base[2]) == (1, 2, 1)
    with pytest.raises(ValidationError):
        irreducibility.kronecker_intersection_check(np.eye(3), np.eye(3))


def test_kronecker_intersection_rejects_a_singular_factor():
    with pytest.raises(Singular):
        irreducibility.kronecker_intersection_check(np.array([[1.0, 2.0], [2.0, 4.0]]), np.eye(2))
    with pytest.raises(Singular):
        irreducibility.kronecker_intersection_check(np.eye(2), np.zeros((2, 2)))


def test_projective_spectrum_ignores_scale(rng):
    M = random_matrix(rng, 3)
    a = irreducibility.projective_spectrum(M)
    b = irreducibility.projective_spectrum(-2.5 * M)
    assert np.prod(np.abs(a)) == pytest.approx(1.0)
    assert irreducibility._spectra_match(a, b)


def test_obstructions_on_the_kronecker_fixture(thm1_base, swap):
    report = irreducibility.conjugacy_obstruction(thm1_base, swap, 1)
    assert report.conjugate_word == (1,)
    assert report.dual_word == (1,)
    assert report.certified
    data = report.to_dict(2)
    assert data["conjugacy"]["status"] == "obstructed"
    assert data["inverse_transpose"]["status"] == "obstructed"


def test_no_obstruction_for_the_identity_permutation(thm1_base):
    report = irreducibility.conjugacy_obstruction(thm1_base, SymbolPermutation.identity(2), 2)
    assert report.conjugate_word is None
    assert report.conjugate_status == "inconclusive"
    assert not report.certified
    assert report.to_dict(2)["conjugacy"]["word"] == "no obstruction up to depth 2"


@pytest.mark.parametrize("mode", [ids.MODE_SINGLE, ids.MODE_FINITE_UNION])
def test_kronecker_fixture_has_no_invariant_structure(thm1_tuple, mode):
    assert irreducibility.invariant_subspace_search(thm1_tuple, mode, depth=6) is None


def test_quasi_multiplicativity_ratios_keep_falling(thm1_tuple):
    ratios = dict(irreducibility.quasi_multiplicativity_profile(thm1_tuple, 2.0, 3, 10).rows)
    for n in range(2, 9):
        assert ratios[n + 2] < ratios[n]


def test_transposed_partners_leave_conjugacy_inconclusive(rng):
    B1, B2 = random_matrix(rng, 2), random_matrix(rng, 2)
    base = MatrixTuple.from_list([B1, B2, B1.T, B2.T])
    report = irreducibility.conjugacy_obstruction(base, SymbolPermutation((3, 4, 1, 2)), 2)
    assert report.conjugate_word is None
    assert report.conjugate_status == "inconclusive"
    assert not report.certified


@pytest.mark.parametrize("scales", [(3.0, 0.5), (-2.0, 1.5), (0.1, -7.0)])
def test_obstructions_do_not_depend_on_scaling(thm1_base, swap, scales):
    scaled = MatrixTuple.from_list([c * B for c, B in zip(scales, thm1_base.matrices)])
    for iota in (swap, SymbolPermutation.identity(2)):
        before = irreducibility.conjugacy_obstruction(thm1_base, iota, 3)
        after = irreducibility.conjugacy_obstruction(scaled, iota, 3)
        assert after.to_dict(2) == before.to_dict(2)


def test_projective_spectrum_separates_the_inverse_transpose():
    M = np.diag([4.0, 2.0, 0.125])
    dual = np.linalg.inv(M).T
    ratios = sorted(a / b for a, b in itertools.permutations(np.diag(M), 2))
    dual_ratios = sorted(a / b for a, b in itertools.permutations(np.diag(dual), 2))
    np.testing.assert_allclose(ratios, dual_ratios)
    assert not irreducibility._spectra_match(
        irreducibility.projective_spectrum(M), irreducibility.projective_spectrum(dual)
    )


def test_projective_spectrum_cannot_separate_in_the_plane(rng):
    M = random_matrix(rng, 2)
    assert irreducibility._spectra_match(
        irreducibility.projective_spectrum(M), irreducibility.projective_spectrum(np.linalg.inv(M).T)
    )
