"""Tests for the command-line interface and the built-in self-checks."""

import csv
import io
import json

import numpy as np
import pytest

from xychain import circuits, gates, verification, xymodel
from xychain.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows, f"no rows in output: {text!r}"
    return rows


def test_energy_sweep_reports_exact_and_sampled_energies(capsys):
    code, out, _ = run_cli(
        ["energy-sweep", "--lambda-steps", "3", "--shots", "500"], capsys
    )
    assert code == 0
    rows = parse_csv(out)
    assert list(rows[0]) == [
        "lambda", "exact_energy", "sampled_mean", "std_error", "shots",
    ]
    assert [row["lambda"] for row in rows] == ["0", "1", "2"]
    for row in rows:
        params = xymodel.ModelParams(4, 1.0, 1.0, float(row["lambda"]))
        expected = xymodel.eigen_energy(xymodel.ground_bitstring(params), params)
        assert float(row["exact_energy"]) == pytest.approx(expected, abs=1e-10)
        error = float(row["std_error"])
        spread = max(5 * error, 1e-9)
        assert abs(float(row["sampled_mean"]) - expected) < spread
        assert row["shots"] == "500"


def test_energy_sweep_diagonal_estimator_is_exact_on_eigenstates(capsys):
    code, out, _ = run_cli(
        [
            "energy-sweep", "--lambda-steps", "2", "--shots", "100",
            "--estimator", "diagonal", "--state", "excited",
        ],
        capsys,
    )
    assert code == 0
    for row in parse_csv(out):
        assert row["sampled_mean"] == row["exact_energy"]
        assert row["std_error"] == "0"


def test_energy_sweep_accepts_an_explicit_occupation_label(capsys):
    code, out, _ = run_cli(
        [
            "energy-sweep", "--lambda-steps", "1", "--lambda-start", "0.5",
            "--state", "0110", "--shots", "200", "--estimator", "diagonal",
        ],
        capsys,
    )
    assert code == 0
    row = parse_csv(out)[0]
    params = xymodel.ModelParams(4, 1.0, 1.0, 0.5)
    assert float(row["exact_energy"]) == pytest.approx(
        xymodel.eigen_energy("0110", params), abs=1e-10
    )


def test_magnetization_sweep_fills_closed_form_only_when_it_applies(capsys):
    code, out, _ = run_cli(
        ["magnetization-sweep", "--lambda-steps", "3", "--shots", "400"], capsys
    )
    assert code == 0
    for row in parse_csv(out):
        lam = float(row["lambda"])
        assert float(row["closed_form_mz"]) == pytest.approx(
            xymodel.gs_mz_closed_form(lam), abs=1e-10
        )
        assert float(row["exact_mz"]) == pytest.approx(
            xymodel.gs_mz_closed_form(lam), abs=1e-10
        )

    code, out, _ = run_cli(
        [
            "magnetization-sweep", "--lambda-steps", "2", "--gamma", "0.5",
            "--shots", "400",
        ],
        capsys,
    )
    assert code == 0
    for row in parse_csv(out):
        assert row["closed_form_mz"] == ""


def test_evolve_matches_the_closed_form_quench_curve(capsys):
    code, out, _ = run_cli(
        ["evolve", "--lambda", "0.5", "--t-steps", "5", "--shots", "400"], capsys
    )
    assert code == 0
    rows = parse_csv(out)
    assert list(rows[0]) == [
        "t", "exact_mz", "closed_form_mz", "sampled_mean", "std_error",
    ]
    for row in rows:
        expected = xymodel.mz_time_closed_form(0.5, float(row["t"]))
        assert float(row["exact_mz"]) == pytest.approx(expected, abs=1e-10)
        assert float(row["closed_form_mz"]) == pytest.approx(expected, abs=1e-10)


def test_evolve_accepts_an_explicit_spin_configuration(capsys):
    code, out, _ = run_cli(
        [
            "evolve", "--lambda", "0.8", "--state", "0110", "--t-steps", "4",
            "--shots", "300",
        ],
        capsys,
    )
    assert code == 0
    rows = parse_csv(out)
    # the quench closed form only covers the all-up start
    assert all(row["closed_form_mz"] == "" for row in rows)
    assert float(rows[0]["exact_mz"]) == pytest.approx(0.0, abs=1e-10)

    code, _, err = run_cli(["evolve", "--state", "gs", "--t-steps", "2"], capsys)
    assert code == 2
    assert "spin configuration" in err


def test_sweep_output_is_deterministic(capsys, tmp_path):
    argv = ["energy-sweep", "--lambda-steps", "4", "--shots", "300", "--seed", "5"]
    _, first, _ = run_cli(argv, capsys)
    _, second, _ = run_cli(argv, capsys)
    assert first == second

    path_a, path_b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_cli(argv + ["--out", str(path_a)], capsys)
    run_cli(argv + ["--out", str(path_b)], capsys)
    assert path_a.read_bytes() == path_b.read_bytes()


def test_different_seeds_give_different_samples(capsys):
    argv = ["energy-sweep", "--lambda-steps", "2", "--shots", "300"]
    _, first, _ = run_cli(argv + ["--seed", "1"], capsys)
    _, second, _ = run_cli(argv + ["--seed", "2"], capsys)
    assert first != second


def test_json_format_carries_config_and_null_closed_form(capsys):
    code, out, _ = run_cli(
        [
            "magnetization-sweep", "--lambda-steps", "2", "--gamma", "0.5",
            "--shots", "300", "--format", "json",
        ],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["config"]["gamma"] == 0.5
    assert len(doc["rows"]) == 2
    assert all(row["closed_form_mz"] is None for row in doc["rows"])


def test_emit_circuit_round_trips_through_the_json_schema(capsys):
    code, out, _ = run_cli(
        ["emit-circuit", "--n", "4", "--lambda", "0.75", "--gamma", "0.5"], capsys
    )
    assert code == 0
    rebuilt = circuits.circuit_from_json(out)
    params = xymodel.ModelParams(4, 1.0, 0.5, 0.75)
    direct = circuits.diagonalization_circuit(params)
    np.testing.assert_allclose(
        circuits.to_unitary(rebuilt), circuits.to_unitary(direct), atol=1e-12
    )


def test_emit_circuit_time_evolution_variant(capsys):
    code, out, _ = run_cli(
        ["emit-circuit", "--circuit", "time", "--t", "0.7"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert [op["name"] for op in doc["ops"]] == ["tevol"] * 4


def test_verify_passes_on_the_intact_package(capsys):
    code, out, _ = run_cli(["verify", "--max-n", "8"], capsys)
    assert code == 0
    assert "all 11 checks passed" in out
    assert "FAIL" not in out


def test_verify_catches_a_corrupted_gate(capsys, monkeypatch):
    impostor = gates.GateMatrix("fswap", (), gates.swap().matrix)
    monkeypatch.setattr(gates, "fswap", lambda: impostor)
    code, out, _ = run_cli(["verify", "--max-n", "4"], capsys)
    assert code == 1
    assert "FAIL" in out
    assert "fswap-product" in out


def test_verification_checks_carry_names_and_details():
    results = verification.run_all_checks(max_n=8)
    assert len(results) == 11
    assert all(r.passed for r in results)
    assert len({r.name for r in results}) == 11
    report = verification.format_report(results)
    assert report.count("PASS") == 11


def test_usage_errors_exit_with_code_two(capsys):
    code, _, err = run_cli(["energy-sweep", "--n", "6", "--lambda-steps", "2"], capsys)
    assert code == 2
    assert "power of two" in err

    code, _, err = run_cli(
        ["energy-sweep", "--state", "01", "--lambda-steps", "2"], capsys
    )
    assert code == 2
    assert "state" in err

    code, _, err = run_cli(["evolve", "--t-steps", "0"], capsys)
    assert code == 2

    with pytest.raises(SystemExit) as excinfo:
        main(["no-such-command"])
    assert excinfo.value.code == 2
