import json
import subprocess
import sys

import numpy as np
import pytest

import choikit as ck
from choikit import io


def run_cli(*args, stdin_text=None):
    return subprocess.run(
        [sys.executable, "-m", "choikit.cli", *args],
        capture_output=True, text=True, input=stdin_text,
    )


def write_matrix(path, matrix):
    path.write_text(json.dumps(io.matrix_to_json(matrix)), encoding="utf-8")


def strip_timing(report_text: str) -> dict:
    report = json.loads(report_text)
    report.pop("timing_s", None)
    return report


class TestMatrixJson:
    def test_round_trip_is_exact(self):
        rng = np.random.default_rng(60)
        for _ in range(20):
            m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            again = io.matrix_from_json(json.loads(json.dumps(io.matrix_to_json(m))))
            assert np.array_equal(m, again)

    def test_malformed_inputs_rejected(self):
        with pytest.raises(ValueError):
            io.matrix_from_json({"rows": [[1, 2], [3, 4]]})
        with pytest.raises(ValueError):
            io.matrix_from_json({"rows": [[[0.0, 0.0]] * 3] * 3})
        with pytest.raises(ValueError):
            io.matrix_from_json([1, 2, 3])

    def test_complex_literals(self):
        assert io.parse_complex("1+0i") == 1.0
        assert io.parse_complex("0.25") == 0.25
        assert io.parse_complex("-0.3i") == -0.3j
        assert io.parse_complex("i") == 1j
        with pytest.raises(ValueError):
            io.parse_complex("one")


class TestGenerate:
    def test_example_family_instance(self):
        result = run_cli("generate", "--example-s", "0.5")
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        matrix = io.matrix_from_json(report["results"]["matrix"])
        np.testing.assert_allclose(matrix, ck.example_family(0.5), atol=0)
        assert report["results"]["validate"]["verdict"] == "PASS"

    def test_identity_map_parameters(self):
        result = run_cli("generate", "--u", "1", "--y", "1+0i", "--z", "0")
        assert result.returncode == 0, result.stderr
        matrix = io.matrix_from_json(json.loads(result.stdout)["results"]["matrix"])
        np.testing.assert_allclose(matrix, ck.choi_from_action(lambda a: a), atol=0)

    def test_degenerate_instance(self):
        result = run_cli("generate", "--degenerate", "y_zero", "--z", "0.5")
        assert result.returncode == 0, result.stderr
        matrix = io.matrix_from_json(json.loads(result.stdout)["results"]["matrix"])
        np.testing.assert_allclose(matrix, ck.degenerate_case("y_zero", z=0.5), atol=0)

    def test_invalid_parameters_exit_2(self):
        result = run_cli("generate", "--u", "0.25", "--y", "0.5", "--z", "0.5")
        assert result.returncode == 2
        assert "error" in result.stderr

    def test_pretty_output_renders_verdicts(self):
        result = run_cli("generate", "--example-s", "0.5", "--pretty")
        assert result.returncode == 0
        assert "PASS" in result.stdout


class TestCertify:
    def test_example_instance_mixed_verdicts(self, tmp_path):
        path = tmp_path / "m.json"
        write_matrix(path, ck.example_family(0.5))
        result = run_cli("certify", str(path), "--positive", "--cp", "--ccp")
        assert result.returncode == 1
        checks = json.loads(result.stdout)["results"]["checks"]
        assert checks["positive"]["verdict"] == "PASS"
        assert checks["cp"]["verdict"] == "FAIL"
        assert checks["ccp"]["verdict"] == "FAIL"

    def test_identity_choi_cp_exit_zero(self, tmp_path):
        path = tmp_path / "m.json"
        write_matrix(path, ck.choi_from_action(lambda a: a))
        result = run_cli("certify", str(path), "--cp")
        assert result.returncode == 0
        assert json.loads(result.stdout)["results"]["checks"]["cp"]["verdict"] == "PASS"

    def test_default_checks_are_the_class_trio(self, tmp_path):
        path = tmp_path / "m.json"
        write_matrix(path, ck.degenerate_case("u_zero"))
        result = run_cli("certify", str(path))
        checks = json.loads(result.stdout)["results"]["checks"]
        assert set(checks) == {"positive", "cp", "ccp"}
        assert result.returncode == 0

    def test_malformed_json_exit_2(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        result = run_cli("certify", str(path), "--cp")
        assert result.returncode == 2

    def test_stdin_input(self):
        payload = json.dumps(io.matrix_to_json(ck.choi_from_action(lambda a: a)))
        result = run_cli("certify", "-", "--cp", stdin_text=payload)
        assert result.returncode == 0


class TestDecompose:
    def test_example_instance_emits_parts_and_operators(self, tmp_path):
        path = tmp_path / "m.json"
        write_matrix(path, ck.example_family(0.5))
        result = run_cli("decompose", str(path))
        assert result.returncode == 0, result.stderr
        results = json.loads(result.stdout)["results"]
        pair = ck.decompose_extremal(ck.example_family(0.5))
        np.testing.assert_allclose(io.matrix_from_json(results["H1"]), pair.h1, atol=0)
        np.testing.assert_allclose(io.matrix_from_json(results["H2"]), pair.h2, atol=0)
        np.testing.assert_allclose(io.matrix_from_json(results["U1"]), pair.k1, atol=0)
        np.testing.assert_allclose(io.matrix_from_json(results["U2"]), pair.k2, atol=0)
        assert results["verify"]["verdict"] == "PASS"
        assert complex(*results["c"]) == pytest.approx(pair.c)

    def test_degenerate_input_exit_2_with_reason(self, tmp_path):
        path = tmp_path / "m.json"
        write_matrix(path, ck.degenerate_case("z_zero", y=0.5))
        result = run_cli("decompose", str(path))
        assert result.returncode == 2
        assert "|z|" in result.stderr

    def test_random_instance_via_generate_pipe(self, tmp_path):
        gen = run_cli("generate", "--u", "0.49", "--y", "0.35", "--z", "0.35i")
        assert gen.returncode == 0
        matrix_json = json.dumps(json.loads(gen.stdout)["results"]["matrix"])
        result = run_cli("decompose", "-", stdin_text=matrix_json)
        assert result.returncode == 0, result.stderr
        assert json.loads(result.stdout)["results"]["verify"]["verdict"] == "PASS"


class TestExplore:
    def test_example_instance_reports_no_alternates(self, tmp_path):
        path = tmp_path / "m.json"
        write_matrix(path, ck.example_family(0.5))
        result = run_cli("explore", str(path), "--samples", "20000", "--seed", "5")
        assert result.returncode == 0, result.stderr
        search = json.loads(result.stdout)["results"]["search"]
        assert search["alternates"] == []
        assert search["diameter"] <= 1e-3

    def test_degenerate_instance_reports_alternates_and_shift_family(self, tmp_path):
        path = tmp_path / "m.json"
        write_matrix(path, ck.degenerate_case("y_zero", z=0.5))
        result = run_cli("explore", str(path), "--samples", "20000",
                         "--seed", "5", "--epsilon", "0.01")
        assert result.returncode == 0, result.stderr
        results = json.loads(result.stdout)["results"]
        assert results["search"]["alternates"]
        assert max(a["distance"] for a in results["search"]["alternates"]) >= 5e-3
        shift = io.matrix_from_json(results["epsilon_family"]["shift"])
        assert shift[1, 1] == 0.01

    def test_zero_resolution_exit_2(self, tmp_path):
        path = tmp_path / "m.json"
        write_matrix(path, ck.example_family(0.5))
        result = run_cli("explore", str(path), "--resolution", "0")
        assert result.returncode == 2

    def test_seed_determinism_modulo_timing(self, tmp_path):
        path = tmp_path / "m.json"
        write_matrix(path, ck.degenerate_case("u_zero"))
        first = run_cli("explore", str(path), "--samples", "20000", "--seed", "9")
        second = run_cli("explore", str(path), "--samples", "20000", "--seed", "9")
        assert strip_timing(first.stdout) == strip_timing(second.stdout)


class TestOutputFile:
    def test_report_written_to_file(self, tmp_path):
        out = tmp_path / "report.json"
        result = run_cli("generate", "--example-s", "0.5", "--out", str(out))
        assert result.returncode == 0
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["command"] == "generate"
        assert report["tool"] == "choikit"
