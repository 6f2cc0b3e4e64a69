import json
import subprocess
import sys


def run_cli(*args, env=None):
    cmd = [sys.executable, "-m", "anharm2d.cli", *args]
    return subprocess.run(cmd, capture_output=True, text=True, env=env, timeout=600)


def test_transform_case1_emits_exact_map_and_potential():
    proc = run_cli("transform", "--case", "1")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["separable"] is True
    assert payload["map"]["entries"][0] == ["1/2*sqrt(2)", "1/2*sqrt(2)"]
    transformed = {(t["i"], t["j"]): t["p"] for t in payload["transformed"]["terms"]}
    assert transformed == {(0, 2): "1/1", (0, 4): "4/1", (2, 0): "1/1"}


def test_transform_output_is_deterministic():
    first = run_cli("transform", "--case", "2")
    second = run_cli("transform", "--case", "2")
    assert first.stdout == second.stdout
    assert first.returncode == second.returncode == 0


def test_symmetry_case5_reports_c4v():
    proc = run_cli("symmetry", "--case", "5")
    payload = json.loads(proc.stdout)
    assert payload["group"]["order"] == 8
    assert payload["boundedness"] == "Marginal"


def test_symmetry_case3_reports_unbounded():
    proc = run_cli("symmetry", "--case", "3", "--lambda", "1")
    payload = json.loads(proc.stdout)
    assert payload["group"]["order"] == 4
    assert payload["boundedness"] == "Unbounded"


def test_rpm_command_digits(tmp_path):
    out = tmp_path / "rpm.json"
    proc = run_cli("rpm", "--g", "4", "--digits", "50", "--dmax", "12", "--out", str(out))
    assert proc.returncode == 0
    payload = json.loads(out.read_text())
    assert payload["energy"].startswith("1.90313694545900002229")
    assert payload["stabilized_digits"] >= 15
    assert payload["trail"][0]["D"] == 2


def test_rpm_env_var_overrides_default_digits():
    import os

    env = dict(os.environ, OSC_PRECISION_DIGITS="30")
    proc = run_cli("rpm", "--g", "4", "--dmax", "8", env=env)
    payload = json.loads(proc.stdout)
    assert payload["precision_digits"] == 30


def test_spectrum_case5():
    proc = run_cli("spectrum", "--case", "5", "--nmax", "8", "--count", "3", "--format", "csv")
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert lines[0].startswith("case,")
    values = {line.split(",")[0]: line.split(",", 1)[1] for line in lines}
    assert values["eigenvalues.0"].startswith("2.014")


def test_spectrum_optimal_omega_runs():
    proc = run_cli("spectrum", "--case", "1", "--nmax", "10", "--omega", "optimal")
    payload = json.loads(proc.stdout)
    assert float(payload["omega"]) > 2.0


def test_case4_isospectrality_report():
    proc = run_cli("case", "4", "--nmax", "10", "--format", "json")
    payload = json.loads(proc.stdout)
    assert payload["flip_conjugation_exact"] is True
    assert float(payload["isospectral_max_diff"]) < 1e-9
    assert len(payload["lowest_eigenvalues"]) == 10


def test_case5_pipeline():
    proc = run_cli("case", "5", "--nmax", "8")
    payload = json.loads(proc.stdout)
    assert payload["group_order"] == 8
    assert payload["boundedness"] == "Marginal"
    assert len(payload["lowest_eigenvalues"]) == 10


def test_resonance_small_basis():
    proc = run_cli(
        "resonance", "--case", "3", "--nmax", "10", "--theta-steps", "5", "--lambda", "0.1"
    )
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert abs(float(payload["re_e"]) - 2.0733) < 1e-3
    assert float(payload["im_e"]) < 0


def test_validation_failures_exit_2():
    assert run_cli("resonance", "--case", "1").returncode == 2
    assert run_cli("case", "7").returncode == 2
    assert run_cli("spectrum", "--case", "1", "--omega", "fixed:-1").returncode == 2
    assert run_cli("rpm", "--g", "4", "--dmax", "2").returncode == 2
    assert run_cli("case", "3", "--theta-min", "0.2", "--theta-max", "0.1").returncode == 2


def test_numerical_failure_exits_3_with_json_error():
    proc = run_cli(
        "resonance",
        "--case", "3",
        "--nmax", "4",
        "--theta-min", "0.01",
        "--theta-max", "0.02",
        "--theta-steps", "3",
    )
    assert proc.returncode == 3
    error = json.loads(proc.stderr)
    assert error["error"] == "NoStationaryPoint"


def test_text_format():
    proc = run_cli("symmetry", "--case", "3", "--format", "text")
    assert proc.returncode == 0
    assert "group.order: 4" in proc.stdout
