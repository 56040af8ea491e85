import csv
import json
import subprocess
import sys


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "cbens.cli", *args],
        capture_output=True, text=True)


def read_csv(path):
    with open(path) as fh:
        return list(csv.reader(fh))


def test_sample_writes_csv_and_manifest(tmp_path):
    out = tmp_path / "draw"
    res = run_cli("sample", "--ensemble", "circular", "--n", "4",
                  "--beta", "2", "--reps", "3", "--seed", "9",
                  "--out", str(out))
    assert res.returncode == 0, res.stderr
    rows = read_csv(out / "coefficients.csv")
    assert len(rows) == 4  # header + 3 replicates
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["seed"] == 9
    outputs = [o["path"] for o in manifest["outputs"]]
    assert any(p.endswith("coefficients.csv") for p in outputs)
    assert all("sha256" in o for o in manifest["outputs"])


def test_sample_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        run_cli("sample", "--ensemble", "cj", "--n", "3", "--beta", "2",
                "--delta-re", "0.5", "--delta-im", "0.3", "--reps", "2",
                "--seed", "42", "--out", str(out))
    assert (a / "coefficients.csv").read_text() == \
        (b / "coefficients.csv").read_text()


def test_spectrum_modes(tmp_path):
    for mode, cols in (("full", 5), ("truncated", 4), ("perturbed", 5)):
        out = tmp_path / mode
        res = run_cli("spectrum", "--ensemble", "circular", "--n", "5",
                      "--beta", "2", "--reps", "2", "--seed", "1",
                      "--mode", mode, "--r", "0.5", "--out", str(out))
        assert res.returncode == 0, res.stderr
        rows = read_csv(out / "spectrum.csv")
        assert len(rows) == 3
        # replicate column plus re/im pairs per eigenvalue
        assert (len(rows[0]) - 1) % 2 == 0


def test_spectrum_invalid_r_exits_2(tmp_path):
    res = run_cli("spectrum", "--ensemble", "circular", "--n", "4",
                  "--beta", "2", "--mode", "perturbed", "--r", "1.5",
                  "--out", str(tmp_path / "x"))
    assert res.returncode == 2


def test_unknown_ensemble_exits_2(tmp_path):
    res = run_cli("sample", "--ensemble", "ginibre", "--n", "4",
                  "--beta", "2", "--out", str(tmp_path / "x"))
    assert res.returncode == 2


def test_limit_values_mode(tmp_path):
    out = tmp_path / "lim"
    res = run_cli("limit", "--family", "sine", "--beta", "2",
                  "--paths", "2", "--step", "0.01", "--zmax", "3",
                  "--mode", "values", "--seed", "5", "--out", str(out))
    assert res.returncode == 0, res.stderr
    assert (out / "values.csv").exists()
    manifest = json.loads((out / "manifest.json").read_text())
    assert " limit " in manifest["command"]


def test_verify_exact_suite(tmp_path):
    out = tmp_path / "v"
    res = run_cli("verify", "--suite", "exact", "--out", str(out))
    assert res.returncode == 0, res.stderr
    lines = [l for l in res.stdout.splitlines() if "PASS" in l or "FAIL" in l]
    assert len(lines) == 9
    report = json.loads((out / "verify_report.json").read_text())
    assert report["passed"]
