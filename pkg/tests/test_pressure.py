import math

import numpy as np
import pytest

from conftest import ALPHA1, ALPHA2
from selfaffine.components import pressure
from selfaffine.components.errors import NotContracting, Overflow, ValidationError
from selfaffine.components.potentials import Factor, PhiS, factor_pair
from selfaffine.components.words import MatrixTuple


def test_tree_sum():
    assert pressure.tree_sum([]) == 0.0
    assert pressure.tree_sum([1.0, 2.0, 3.0]) == 6.0
    assert pressure.tree_sum(np.ones(1000)) == 1000.0


def test_level_sums_do_not_depend_on_worker_count(thm1_tuple):
    P = PhiS(thm1_tuple, 1.3)
    assert pressure.level_sum(P, 11, threads=1) == pressure.level_sum(P, 11, threads=4)
    np.testing.assert_array_equal(pressure.level_values(P, 9, threads=1), pressure.level_values(P, 9, threads=3))


def test_zero_exponent_gives_log_alphabet(thm1_tuple):
    estimate = pressure.level_pressure(PhiS(thm1_tuple, 0.0), 5)
    assert estimate.value == pytest.approx(math.log(2), abs=1e-12)
    assert estimate.word_count == 32
    assert [n for n, _ in estimate.history] == [1, 2, 3, 4, 5]


def test_similarities_have_closed_form_pressure(halves):
    estimate = pressure.level_pressure(PhiS(halves, 1.0), 6)
    assert estimate.value == pytest.approx(0.0, abs=1e-12)
    assert estimate.upper == pytest.approx(0.0, abs=1e-12)
    # periodic orbits carry no entropy
    assert estimate.lower == pytest.approx(math.log(0.5), abs=1e-12)


def test_estimate_bounds_are_ordered(thm1_tuple):
    estimate = pressure.level_pressure(PhiS(thm1_tuple, 1.5), 8)
    assert estimate.lower <= estimate.value
    assert estimate.upper == min(v for _, v in estimate.history)
    data = estimate.to_dict()
    assert data["level"] == 8
    assert len(data["history"]) == 8


def test_level_pressure_is_subadditive(thm1_tuple):
    estimate = pressure.level_pressure(PhiS(thm1_tuple, 1.5), 8)
    defects = pressure.subadditivity_defects(estimate)
    assert defects[-1][:2] == (4, 4)
    assert all(slack >= -1e-12 for _, _, slack in defects)


def test_level_pressure_validates_level_and_budget(thm1_tuple):
    P = PhiS(thm1_tuple, 1.0)
    with pytest.raises(ValidationError):
        pressure.level_pressure(P, 0)
    with pytest.raises(Overflow):
        pressure.level_pressure(P, 12, budget=1000)


@pytest.mark.parametrize("n", [1, 4, 8, 12])
def test_factor_sums_agree_and_sandwich_phi(thm1_base, swap, n):
    phi1, phi2 = factor_pair(thm1_base, swap, 1.5)
    report = pressure.pressure_equality_check(phi1, phi2, n)
    assert report.symmetric
    assert report.sandwich
    assert report.relative_asymmetry <= 1e-12
    assert 0.5 * (report.S1 + report.S2) <= report.S * (1 + 1e-12)


def test_pressure_equality_needs_phi_for_generic_potentials(thm1_tuple):
    P = PhiS(thm1_tuple, 1.5)
    with pytest.raises(ValidationError):
        pressure.pressure_equality_check(P, P, 3)


def test_four_map_bounds():
    bounds = pressure.four_map_bounds(ALPHA1, ALPHA2)
    assert bounds["phi1_lower"] == pytest.approx(0.1711, abs=1e-4)
    assert bounds["phi2_upper"] == pytest.approx(-0.2557, abs=1e-4)


def test_four_map_pressure_signs(thm2):
    bounds = pressure.four_map_bounds(ALPHA1, ALPHA2)
    A = thm2.ifs.linear
    phi1 = pressure.level_pressure(PhiS(A, 1.0), 8)
    assert phi1.value >= bounds["phi1_lower"]
    phi2 = pressure.level_pressure(PhiS(A, 2.0), 8)
    assert all(value <= bounds["phi2_upper"] + 1e-9 for _, value in phi2.history)


def test_four_map_affinity_dimension_lies_between_one_and_two(thm2):
    result = pressure.affinity_dimension(thm2.ifs.linear, 8, tol=1e-3)
    assert 1.0 < result.lo < result.hi < 2.0
    assert result.width <= 1e-3
    assert result.monotone
    assert result.lower_objective <= max(value for s, value in result.evaluations if s == result.lo)


@pytest.mark.parametrize("fixture, expected", [("halves", 1.0), ("quarter_halves", 2.0)])
def test_affinity_dimension_of_similarities(request, fixture, expected):
    T = request.getfixturevalue(fixture)
    result = pressure.affinity_dimension(T, 6, tol=1e-3)
    assert result.midpoint == pytest.approx(expected, abs=1e-3)
    assert result.kind == "affinity"


def test_affinity_dimension_of_the_irreducible_three_dimensional_pair(eq1_tuple):
    result = pressure.affinity_dimension(eq1_tuple, 8, tol=1e-3)
    assert 1.0 < result.lo and result.hi < 2.0


def test_affinity_dimension_requires_contraction(rotation):
    T = MatrixTuple.from_list([rotation, 0.5 * rotation])
    with pytest.raises(NotContracting):
        pressure.affinity_dimension(T, 3)


def test_bisect_reports_sign_failures():
    with pytest.raises(ValidationError):
        pressure.bisect(lambda s: -1.0 - s, 0.0, 4.0, 1e-3, 1, "affinity")
    with pytest.raises(NotContracting):
        pressure.bisect(lambda s: 1.0, 0.0, 4.0, 1e-3, 1, "affinity")
    with pytest.raises(ValidationError):
        pressure.bisect(lambda s: 1.0 - s, 0.0, 4.0, 0.0, 1, "affinity")


def test_bisect_flags_non_monotone_objectives():
    result = pressure.bisect(lambda s: math.cos(3 * s), 0.0, 1.0, 1e-4, 1, "affinity")
    assert result.lo <= math.pi / 6 <= result.hi
    assert result.monotone
    wiggly = pressure.bisect(lambda s: 1.0 - s / 4 + (0.5 if 2.5 < s < 3.5 else 0.0), 0.0, 4.0, 1e-3, 1, "affinity")
    assert not wiggly.monotone


def test_pressure_curve_for_similarities(halves):
    curve = pressure.pressure_curve(halves, 5, [0.0, 0.5, 1.0, 2.0, 3.0])
    expected = [math.log(2) - s * math.log(2) for s in (0.0, 0.5, 1.0, 2.0, 3.0)]
    np.testing.assert_allclose(curve.values, expected, atol=1e-12)
    assert curve.monotone
    frame = curve.to_frame()
    assert list(frame.columns) == ["s", "pressure"]
    assert len(frame) == 5


def test_factor_pressure_estimates_match(thm1_base, swap):
    first = pressure.level_pressure(Factor(thm1_base, swap, 1.5, 1), 6)
    second = pressure.level_pressure(Factor(thm1_base, swap, 1.5, 2), 6)
    assert first.value == pytest.approx(second.value, rel=1e-12)


@pytest.mark.parametrize("n", range(1, 9))
def test_periodic_lower_bound_never_exceeds_the_level_pressure(thm1_tuple, n):
    P = PhiS(thm1_tuple, 1.5)
    estimate = pressure.level_pressure(P, n)
    assert estimate.lower <= estimate.value
    for m, value in estimate.history:
        assert pressure.lower_bound_periodic(P, m) <= value


def test_kronecker_lower_bound_comes_from_the_first_symbol(thm1_tuple):
    # 1^n has eigenvalue moduli alpha1^n twice, and no word beats sigma_1 <= alpha1^n
    estimate = pressure.level_pressure(PhiS(thm1_tuple, 1.5), 6)
    assert estimate.lower == pytest.approx(1.5 * math.log(ALPHA1), rel=1e-12)
    assert estimate.lower < estimate.value


def test_periodic_lower_bound_of_a_diagonal_pair():
    T = MatrixTuple.from_list([np.diag([0.5, 1.0 / 3.0]), np.diag([0.25, 0.2])])
    assert pressure.lower_bound_periodic(PhiS(T, 1.0), 1) == pytest.approx(math.log(0.5), rel=1e-12)


def test_pressure_curve_is_non_increasing_in_s(thm1_tuple, thm2):
    grid = np.linspace(0.0, 4.0, 17)
    for T, n in ((thm1_tuple, 6), (thm2.ifs.linear, 4)):
        curve = pressure.pressure_curve(T, n, grid)
        assert curve.monotone
        assert np.all(np.diff(curve.values) <= 1e-12)
        assert curve.values[0] == pytest.approx(math.log(T.N), abs=1e-12)
