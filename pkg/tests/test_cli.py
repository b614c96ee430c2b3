"""Command-line behavior: outputs, exit codes, determinism, round trips."""

import json

import pytest

from triseries.cli import main


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_spectrum_coulomb_rows(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--case", "coulomb", "--Z", "1",
                           "--ell", "0", "--m-max", "2")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "m,E_formula,E_oracle,abs_diff"
    first = lines[1].split(",")
    assert float(first[1]) == pytest.approx(-0.5)
    assert float(first[2]) == pytest.approx(-0.5, abs=1e-4)


def test_spectrum_oscillator_ell_one(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--case", "oscillator",
                           "--omega", "1", "--ell", "1", "--m-max", "1")
    assert code == 0
    first = out.strip().split("\n")[1].split(",")
    assert float(first[1]) == pytest.approx(2.5)


def test_spectrum_no_bound_states_is_usage_error(capsys):
    code, out, err = run_cli(capsys, "spectrum", "--case", "morse",
                             "--V1", "0.2", "--lambda", "1.0")
    assert code == 1
    assert "NoBoundStates" in err


def test_spectrum_tolerance_failure_exit_code(capsys):
    code, _, _ = run_cli(capsys, "spectrum", "--case", "oscillator",
                         "--omega", "1", "--m-max", "1", "--tol", "1e-12")
    assert code == 2


def test_phaseshift_single_energy(capsys):
    code, out, _ = run_cli(capsys, "phaseshift", "--case", "coulomb",
                           "--Z", "1", "--ell", "0", "--E", "0.5")
    assert code == 0
    row = out.strip().split("\n")[1].split(",")
    assert float(row[1]) == pytest.approx(0.30164, abs=1e-4)


def test_polytable_degree_zero(capsys):
    code, out, _ = run_cli(capsys, "polytable", "--family", "meixner",
                           "--nu", "0", "--tau", "0.25", "--z", "3",
                           "--n-max", "0")
    assert code == 0
    assert out.strip().split("\n")[1] == "0,1"


def test_match_names_family_and_assignments(capsys):
    code, out, _ = run_cli(capsys, "match", "--equation", "laguerre",
                           "--scenario", "LA", "--a", "0", "--b", "0",
                           "--A-plus", "1.0", "--A-minus", "0",
                           "--A-zero", "2.0")
    assert code == 0
    payload = json.loads(out)
    diag = payload["diagnostics"]
    assert diag["family"] == "meixner_pollaczek"
    assert diag["spectral_map"]["family_value"] == pytest.approx(-1.0)
    assert diag["assignments"]["theta"] == pytest.approx(0.9272952180016123)


def test_determinism_byte_identical(capsys):
    args = ("phaseshift", "--case", "morse", "--V1", "1.0", "--lambda", "1.0",
            "--E-min", "0.2", "--E-max", "3.0", "--n-E", "7",
            "--format", "json")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_json_config_round_trip(tmp_path, capsys):
    args = ("phaseshift", "--case", "coulomb", "--Z", "1", "--ell", "0",
            "--E", "0.5", "--format", "json")
    code, out1, _ = run_cli(capsys, *args)
    assert code == 0
    cfg = tmp_path / "job.json"
    cfg.write_text(out1)
    code, out2, _ = run_cli(capsys, "--config", str(cfg), "phaseshift")
    assert code == 0
    assert out1 == out2


def test_csv_output_to_file(tmp_path, capsys):
    out_path = tmp_path / "table.csv"
    code, out, _ = run_cli(capsys, "polytable", "--family", "meixner_pollaczek",
                           "--mu", "0.5", "--theta", "1.1", "--z", "0.7",
                           "--n-max", "4", "--out", str(out_path))
    assert code == 0
    assert out == ""
    text = out_path.read_text()
    assert text.startswith("n,P_n\n")
    assert text.endswith("\n")
    assert "\r" not in text


def test_verify_single_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "degeneration")
    assert code == 0
    assert "extended_family_degeneration" in out
    assert "pass" in out


def test_wavefunction_rows(capsys):
    code, out, _ = run_cli(capsys, "wavefunction", "--case", "oscillator",
                           "--omega", "1", "--ell", "0", "--m", "0",
                           "--r-min", "0.4", "--r-max", "4.0", "--n-r", "5")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "r,psi"
    assert len(lines) == 6
