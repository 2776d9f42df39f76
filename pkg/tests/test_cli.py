"""Tests for the command-line interface."""

import json

import pytest

from fano_lines.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    payload = json.loads(out)
    assert payload["schema"] == "fano-lines/1"
    # canonical serialization: sorted keys, compact separators
    assert out == json.dumps(payload, sort_keys=True,
                             separators=(",", ":")) + "\n"
    return payload


class TestLinesSeparable:
    def test_fermat_cubic(self, capsys):
        payload = run_json(
            capsys, "lines", "separable", "--phi", "x^3-y^3",
            "--psi", "x^3-y^3",
        )
        assert payload["total"] == 27
        assert payload["alpha"] == 6
        assert payload["grid"] == 9
        assert payload["ruling"] == 18
        assert payload["group"] == "D3"

    def test_real_flag_adds_closed_form(self, capsys):
        payload = run_json(
            capsys, "lines", "separable", "--phi", "x^3-y^3",
            "--psi", "x^3-y^3", "--real",
        )
        assert payload["real_closed_form"] == 3
        assert payload["real_count"] == 3

    def test_emit_lists_all_lines(self, capsys):
        payload = run_json(
            capsys, "lines", "separable", "--phi", "x^3-y^3",
            "--psi", "x^3-y^3", "--emit",
        )
        assert len(payload["lines"]) == 27
        assert all(len(line) == 6 for line in payload["lines"])

    def test_degree_mismatch_is_user_error(self, capsys):
        code, _, err = run(
            capsys, "lines", "separable", "--phi", "x^3", "--psi", "x^4",
        )
        assert code == 1
        assert "degree" in err

    def test_inhomogeneous_rejected(self, capsys):
        code, _, err = run(
            capsys, "lines", "separable", "--phi", "x^3+y", "--psi", "x^3",
        )
        assert code == 1
        assert "homogeneous" in err


class TestLinesPlucker:
    def test_catalog_name(self, capsys):
        payload = run_json(capsys, "lines", "plucker", "--surface", "fermat:3")
        assert payload["total"] == 27
        assert payload["strata"] == {
            "1": 18, "2": 9, "3": 0, "4": 0, "5": 0, "6": 0,
        }
        assert payload["certified"] is True
        assert payload["smooth_checked"] is True

    def test_expression_surface(self, capsys):
        payload = run_json(
            capsys, "lines", "plucker", "--surface", "x^3+y^3+z^3+t^3",
        )
        assert payload["total"] == 27

    def test_emit(self, capsys):
        payload = run_json(
            capsys, "lines", "plucker", "--surface", "fermat:3", "--emit",
        )
        assert len(payload["lines"]) == 27

    def test_parse_error_position(self, capsys):
        code, _, err = run(capsys, "lines", "plucker", "--surface", "x^2(")
        assert code == 1
        assert "offset 4" in err

    def test_singular_surface_names_cli_flag(self, capsys):
        code, _, err = run(
            capsys, "lines", "plucker", "--surface", "x^2*y^2 - z^4 + t^4",
        )
        assert code == 1
        assert "--skip-smooth-check" in err

    def test_budget_exceeded_exit_code(self, capsys):
        code, _, err = run(
            capsys, "lines", "plucker", "--surface", "S8",
            "--budget", "40", "--skip-smooth-check",
        )
        assert code == 2
        assert "budget" in err

    def test_unknown_catalog_family_parameter(self, capsys):
        code, _, err = run(
            capsys, "lines", "plucker", "--surface", "fermat:x",
        )
        assert code == 1
        assert "integer degree" in err


class TestCovering:
    def test_fermat_cubic_curve(self, capsys):
        payload = run_json(capsys, "covering", "--curve", "x^3+y^3+z^3")
        assert payload["beta"] == 9
        assert payload["line_count"] == 27
        assert payload["undetermined"] == 0
        assert len(payload["total_inflections"]) == 9

    def test_emit(self, capsys):
        payload = run_json(
            capsys, "covering", "--curve", "x^3+y^3+z^3", "--emit",
        )
        assert len(payload["lines"]) == 27

    def test_singular_curve_is_user_error(self, capsys):
        code, _, err = run(capsys, "covering", "--curve", "x^3")
        assert code == 1
        assert "singular" in err


class TestSkewRams:
    def test_degree_seven_shape(self, capsys):
        payload = run_json(capsys, "skew", "rams", "--d", "7")
        assert payload["count"] == 39
        assert payload["disjoint"] is True
        assert payload["claimed_size"] == 39
        assert float(payload["min_pairing"]) > 1e-6
        assert payload["bounds"]["miyaoka"] == 70
        assert payload["bounds"]["constructed"] == 39

    def test_even_degree_is_user_error(self, capsys):
        code, _, err = run(capsys, "skew", "rams", "--d", "8")
        assert code == 1
        assert "coprime" in err


class TestBounds:
    def test_degree_eight_row(self, capsys):
        payload = run_json(capsys, "bounds", "--d", "8")
        assert payload["uniform"] == 352
        assert payload["segre"] == 492
        assert payload["separable_max"] == 256
        assert payload["best_known"] == 352
        assert payload["miyaoka"] == 96

    def test_low_degree_is_user_error(self, capsys):
        code, _, err = run(capsys, "bounds", "--d", "2")
        assert code == 1


class TestConstruct:
    def test_octahedral_octic(self, capsys):
        payload = run_json(
            capsys, "construct", "--degree", "8", "--group", "O",
        )
        assert payload["group"] == "O"
        assert payload["expression"] == "x^8 + 14*x^4*y^4 + y^8"

    def test_seed_determinism(self, capsys):
        args = ("construct", "--degree", "9", "--group", "cyclic:3",
                "--seed", "5")
        code_a, out_a, _ = run(capsys, *args)
        code_b, out_b, _ = run(capsys, *args)
        assert code_a == code_b == 0
        assert out_a == out_b

    def test_bad_group_is_user_error(self, capsys):
        code, _, err = run(
            capsys, "construct", "--degree", "6", "--group", "Z9",
        )
        assert code == 1
        assert "group" in err


class TestCatalogCommand:
    def test_lists_standard_names(self, capsys):
        payload = run_json(capsys, "catalog")
        names = set(payload["surfaces"])
        assert {"fermat:d", "schur4", "S6", "S8", "sarti6", "rams:d"} <= names

    def test_custom_catalog_path(self, capsys, tmp_path):
        path = tmp_path / "extra.txt"
        path.write_text("cubic: x^3 + y^3 + z^3 + t^3\n")
        payload = run_json(capsys, "catalog", "--catalog", str(path))
        assert list(payload["surfaces"]) == ["cubic"]
        result = run_json(
            capsys, "lines", "plucker", "--surface", "cubic",
            "--catalog", str(path),
        )
        assert result["total"] == 27

    def test_missing_catalog_file_is_user_error(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "catalog", "--catalog", str(tmp_path / "absent.txt"),
        )
        assert code == 1


class TestConfiguration:
    def test_tol_must_be_in_open_interval(self, capsys):
        for bad in ("0", "1e-2", "0.5", "-1e-9"):
            code, _, err = run(capsys, "bounds", "--d", "8", "--tol", bad)
            assert code == 1
            assert "--tol" in err

    def test_tol_inside_interval_accepted(self, capsys):
        payload = run_json(capsys, "bounds", "--d", "8", "--tol", "5e-3")
        assert payload["uniform"] == 352

    def test_budget_must_be_positive(self, capsys):
        code, _, err = run(capsys, "bounds", "--d", "8", "--budget", "0")
        assert code == 1
        assert "--budget" in err

    def test_threads_flag(self, capsys):
        payload = run_json(
            capsys, "lines", "plucker", "--surface", "fermat:3",
            "--threads", "2",
        )
        assert payload["total"] == 27

    def test_threads_env_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("FANO_LINES_THREADS", "2")
        payload = run_json(capsys, "lines", "plucker", "--surface", "fermat:3")
        assert payload["total"] == 27

    def test_threads_env_invalid(self, capsys, monkeypatch):
        monkeypatch.setenv("FANO_LINES_THREADS", "many")
        code, _, err = run(capsys, "lines", "plucker", "--surface", "fermat:3")
        assert code == 1
        assert "FANO_LINES_THREADS" in err

    def test_unknown_command_is_user_error(self, capsys):
        code, _, err = run(capsys, "nonsense")
        assert code == 1

    def test_missing_required_flag_is_user_error(self, capsys):
        code, _, err = run(capsys, "bounds")
        assert code == 1

    def test_exponent_overflow_is_user_error(self, capsys):
        code, _, err = run(capsys, "lines", "plucker", "--surface", "x^65")
        assert code == 1
        assert "exceeds the maximum" in err


class TestTableFormat:
    def test_bounds_table(self, capsys):
        code, out, _ = run(capsys, "bounds", "--d", "8", "--format", "table")
        assert code == 0
        assert "{" not in out
        rows = dict(
            line.split(None, 1) for line in out.strip().splitlines()
        )
        assert rows["uniform"] == "352"
        assert rows["separable_max"] == "256"

    def test_strata_flattened(self, capsys):
        code, out, _ = run(
            capsys, "lines", "plucker", "--surface", "fermat:3",
            "--format", "table",
        )
        assert code == 0
        assert "strata.1" in out


class TestDeterminism:
    def test_byte_identical_reruns(self, capsys):
        for args in (
            ("skew", "rams", "--d", "9"),
            ("covering", "--curve", "x^3+y^3+z^3", "--emit"),
            ("lines", "separable", "--phi", "x^4-y^4", "--psi",
             "x^4-2y^4", "--emit"),
        ):
            _, out_a, _ = run(capsys, *args)
            _, out_b, _ = run(capsys, *args)
            assert out_a == out_b
