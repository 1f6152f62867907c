import json
import math
from pathlib import Path

import pytest

from selfaffine import __version__
from selfaffine.components import ids
from selfaffine.main import run

CANTOR_SQUARE = Path(__file__).resolve().parent.parent / "configs" / "cantor_square.toml"


def report(capsys):
    return json.loads(capsys.readouterr().out)


def test_no_command_prints_help(capsys):
    assert run([]) == ids.EXIT_VALIDATION
    assert "COMMAND" in capsys.readouterr().err


def test_pressure_at_zero_exponent(capsys):
    assert run(["pressure", "--fixture", "thm1", "--s", "0", "--n", "5"]) == ids.EXIT_OK
    data = report(capsys)
    assert data[ids.REPORT_SCHEMA] == ids.SCHEMA_VERSION
    assert data[ids.REPORT_LIBRARY] == __version__
    assert data[ids.REPORT_COMMAND] == "pressure"
    assert data[ids.REPORT_LEVEL] == 5
    assert data[ids.REPORT_SEED] == 0
    assert len(data[ids.REPORT_CONFIG_HASH]) == 64
    assert data[ids.REPORT_SYSTEM]["dimension"] == 4
    assert data[ids.REPORT_RESULT]["value"] == pytest.approx(math.log(2), abs=1e-12)


def test_pressure_csv(capsys):
    assert run(["pressure", "--fixture", "thm1", "--s", "1.5", "--n", "3", "--out", "csv"]) == ids.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,pressure"
    assert len(lines) == 4


def test_factor_potential_needs_a_kronecker_system(capsys):
    assert run(["pressure", "--fixture", "eq1-3x3", "--potential", "factor1", "--s", "1.5"]) == ids.EXIT_VALIDATION
    assert "Kronecker" in capsys.readouterr().err


def test_factor_potential_out_of_range(capsys):
    assert run(["pressure", "--fixture", "thm1", "--potential", "factor2", "--s", "2.5"]) == ids.EXIT_VALIDATION


def test_budget_overflow_exit_code(capsys):
    assert run(["pressure", "--fixture", "thm2", "--n", "9", "--budget", "1000"]) == ids.EXIT_OVERFLOW
    assert "budget" in capsys.readouterr().err


def test_missing_system(capsys):
    assert run(["dimaff"]) == ids.EXIT_VALIDATION
    assert "--fixture" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["pressure", "--fixture", "bogus"],
        ["pressure", "--fixture", "thm1", "--n", "abc"],
        ["nonsense"],
        ["dimaff", "--fixture", "thm1", "--unknown-flag"],
    ],
)
def test_usage_errors_are_validation_errors(capsys, argv):
    assert run(argv) == ids.EXIT_VALIDATION
    assert "usage" in capsys.readouterr().err


def test_word_must_be_digits(capsys):
    assert run(["distinct", "--fixture", "thm1", "--word", "ab"]) == ids.EXIT_VALIDATION
    assert "'ab'" in capsys.readouterr().err


@pytest.mark.parametrize("center", ["a,b,c,d", "0,0"])
def test_bad_separation_center(capsys, center):
    assert run(["separation", "--fixture", "thm2", "--center", center]) == ids.EXIT_VALIDATION
    assert "--center" in capsys.readouterr().err


def test_non_numeric_matrix_entry(capsys, tmp_path):
    path = tmp_path / "letters.toml"
    path.write_text('dimension = 2\nmatrices = [["a", 0, 0, 0.5], [0.5, 0, 0, 0.5]]\n')
    assert run(["dimaff", "--config", str(path)]) == ids.EXIT_VALIDATION
    err = capsys.readouterr().err
    assert "field 'matrices'" in err
    assert "line 2" in err


def test_fixture_parameter_must_be_a_number(capsys, tmp_path):
    path = tmp_path / "words.toml"
    path.write_text('fixture = "thm1"\n[parameters]\nalpha1 = "big"\n')
    assert run(["pressure", "--config", str(path)]) == ids.EXIT_VALIDATION
    assert "field 'alpha1'" in capsys.readouterr().err


def test_dimaff_on_a_config(capsys, tmp_path):
    output = tmp_path / "dim.json"
    assert run(["dimaff", "--config", str(CANTOR_SQUARE), "--n", "4", "--output", str(output)]) == 0
    data = json.loads(output.read_text())
    low, high = data[ids.REPORT_RESULT]["interval"]
    assert low <= 1.0 <= high
    assert data[ids.REPORT_TOLERANCE] == 1e-3


def test_bad_config_reports_the_path(capsys, tmp_path):
    path = tmp_path / "broken.toml"
    path.write_text("dimension = 2\nmatrices = [[1.0]]\n")
    assert run(["dimaff", "--config", str(path)]) == ids.EXIT_VALIDATION
    assert "broken.toml" in capsys.readouterr().err


def test_curve_csv(capsys):
    assert run(["curve", "--fixture", "thm1", "--n", "3", "--steps", "5", "--out", "csv"]) == ids.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "s,pressure"
    assert len(lines) == 6


def test_gibbs(capsys):
    assert run(["gibbs", "--fixture", "thm1", "--s", "1.5", "--n", "6"]) == ids.EXIT_OK
    result = report(capsys)[ids.REPORT_RESULT]
    assert result["relabel_defect"] <= 1e-12
    assert 0 < result["total_variation"] <= 1
    assert set(result["gibbs_sandwich"]) == {"factor1", "factor2"}


def test_distinct_finds_its_own_witness(capsys):
    assert run(["distinct", "--fixture", "thm1", "--nmax", "12"]) == ids.EXIT_OK
    result = report(capsys)[ids.REPORT_RESULT]
    assert result["word"] == "1"
    assert result["asymptote"] == pytest.approx(0.5 * math.log(0.44 / 0.2))


def test_distinct_rejects_a_non_witness(capsys):
    assert run(["distinct", "--fixture", "thm1", "--word", "12"]) == ids.EXIT_VALIDATION


def test_qm(capsys):
    assert run(["qm", "--fixture", "thm1", "--nmax", "6"]) == ids.EXIT_OK
    result = report(capsys)[ids.REPORT_RESULT]
    assert len(result["rows"]) == 6
    assert result["decay_slope"] < 0


def test_irred_reports_witnesses_and_obstructions(capsys):
    assert run(["irred", "--fixture", "thm1", "--exterior", "2", "--depth", "3"]) == ids.EXIT_OK
    result = report(capsys)[ids.REPORT_RESULT]
    assert result["dimension"] == 6
    assert result["eigenvalue_ratio_witness"] == "1"
    assert result["obstructions"]["certified"]


def test_irred_finite_union(capsys):
    assert run(["irred", "--fixture", "eq1-3x3", "--mode", "finite_union", "--depth", "3"]) == ids.EXIT_OK
    result = report(capsys)[ids.REPORT_RESULT]
    assert result["witnesses"][0]["members"] == 3
    assert "obstructions" not in result


def test_separation_default_radius(capsys):
    assert run(["separation", "--fixture", "thm2"]) == ids.EXIT_OK
    assert report(capsys)[ids.REPORT_RESULT]["verdict"] == "pass"


def test_separation_with_a_large_radius(capsys):
    assert run(["separation", "--fixture", "thm2", "--radius", "10"]) == ids.EXIT_OK
    result = report(capsys)[ids.REPORT_RESULT]
    assert result["verdict"] == "fail"
    assert result["violation"].startswith("disjointness")


def test_separation_needs_translations(capsys):
    assert run(["separation", "--fixture", "thm1", "--radius", "2"]) == ids.EXIT_VALIDATION


def test_attractor_csv_is_seeded(capsys):
    args = ["attractor", "--fixture", "thm2", "--depth", "10", "--count", "20", "--seed", "5", "--out", "csv"]
    assert run(args) == ids.EXIT_OK
    first = capsys.readouterr().out
    assert run(args) == ids.EXIT_OK
    assert capsys.readouterr().out == first
    assert first.splitlines()[0] == "x1,x2,x3,x4"


def test_thm2_pipeline_rejects_other_fixtures(capsys):
    assert run(["thm2", "--fixture", "thm1", "--n", "2"]) == ids.EXIT_VALIDATION


def test_thm2_pipeline_rejects_broken_hypotheses(capsys):
    assert run(["thm2", "--alpha1", "0.5", "--n", "2"]) == ids.EXIT_VALIDATION
    assert "alpha1" in capsys.readouterr().err


def test_thm2_pipeline_json_without_table(capsys):
    assert run(["thm2", "--n", "8", "--out", "csv"]) == ids.EXIT_OK
    captured = capsys.readouterr()
    data = json.loads(captured.out)
    assert data[ids.REPORT_RESULT]["passed"]
    assert "PASS" in captured.err
    assert "no tabular output" in captured.err
