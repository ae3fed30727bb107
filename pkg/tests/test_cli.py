"""End-to-end CLI contract: commands, exit codes, artifacts, determinism."""
import json
import os
import subprocess
import sys

import pytest

KRAW44 = {
    "m": 2,
    "a": ["1"],
    "channels": [
        {"kind": "krawtchouk", "p": "1/2", "N": 4},
        {"kind": "krawtchouk", "p": "1/2", "N": 4},
    ],
}
BAD_HAHN = {
    "m": 2,
    "a": ["1"],
    "channels": [
        {"kind": "hahn", "alpha": "1", "beta": "1", "N": 3},
        {"kind": "hahn", "alpha": "1", "beta": "1", "N": 3},
    ],
}
CHARLIER_BC = {
    "m": 2,
    "a": ["1"],
    "channels": [{"kind": "charlier", "b": "1"}, {"kind": "charlier", "b": "2"}],
}
KC_TRANSITION = {
    "name": "krawtchouk->charlier",
    "n": 2,
    "a": "1",
    "ladder": ["100", "1000", "10000"],
    "params": {"b": "2"},
}


def run_cli(*args, env_extra=None):
    env = os.environ.copy()
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "mvop.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


@pytest.fixture
def spec_files(tmp_path):
    paths = {}
    for name, payload in (
        ("kraw44", KRAW44),
        ("bad_hahn", BAD_HAHN),
        ("charlier_bc", CHARLIER_BC),
        ("kc", KC_TRANSITION),
    ):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(payload))
        paths[name] = str(p)
    return paths


class TestFamily:
    def test_latex_five_polynomials(self, spec_files):
        res = run_cli("family", "--spec", spec_files["kraw44"], "--n", "4", "--format", "latex")
        assert res.returncode == 0
        assert res.stdout.count("\\begin{pmatrix}") >= 5
        assert "1 & -2" in res.stdout

    def test_json_artifact_keys(self, spec_files, tmp_path):
        out = tmp_path / "fam.json"
        res = run_cli(
            "family", "--spec", spec_files["charlier_bc"], "--n", "3",
            "--format", "json", "--out", str(out),
        )
        assert res.returncode == 0
        data = json.loads(out.read_text())
        assert set(["Q", "W", "D", "Lambda", "spec", "tau"]) <= set(data)
        assert len(data["Q"]) == 4
        assert data["Lambda"][2] == ["3", "2"]

    def test_bad_hahn_with_operator_exits_2(self, spec_files):
        res = run_cli("family", "--spec", spec_files["bad_hahn"], "--operator")
        assert res.returncode == 2
        assert "alpha_i + beta_i = alpha_j + beta_j + 2" in res.stderr

    def test_bad_hahn_without_operator_still_constructs(self, spec_files):
        res = run_cli("family", "--spec", spec_files["bad_hahn"], "--n", "2")
        assert res.returncode == 0
        data = json.loads(res.stdout)
        assert data["D"] is None and "note" in data

    def test_missing_file_exits_3(self, tmp_path):
        res = run_cli("family", "--spec", str(tmp_path / "absent.json"))
        assert res.returncode == 3

    def test_invalid_spec_exits_2(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps({"m": 2, "a": ["0"], "channels": KRAW44["channels"]}))
        res = run_cli("family", "--spec", str(p))
        assert res.returncode == 2
        assert "nonzero" in res.stderr


class TestVerify:
    def test_pass_exits_0(self, spec_files, tmp_path):
        out = tmp_path / "report.json"
        res = run_cli("verify", "--spec", spec_files["kraw44"], "--out", str(out))
        assert res.returncode == 0
        report = json.loads(out.read_text())
        assert report["pass"] is True
        assert report["probe_grid"]["a"] == ["1", "2", "3", "1/2", "-1"]
        kinds = {c["check"] for c in report["checks"]}
        assert kinds == {"orthogonality", "eigenfunction", "recurrence"}

    def test_perturbed_exits_1(self, spec_files):
        res = run_cli("verify", "--spec", spec_files["kraw44"], "--perturb", "--out", os.devnull)
        assert res.returncode == 1
        assert "verification failed" in res.stderr

    def test_truncated_suite(self, spec_files, tmp_path):
        out = tmp_path / "trunc.json"
        res = run_cli(
            "verify", "--spec", spec_files["charlier_bc"], "--n-max", "3",
            "--x-max", "400", "--tol", "1e-9", "--out", str(out),
        )
        assert res.returncode == 0
        report = json.loads(out.read_text())
        assert report["pass"] is True

    def test_probe_override(self, spec_files, tmp_path):
        out = tmp_path / "probes.json"
        res = run_cli(
            "verify", "--spec", spec_files["kraw44"], "--probes", "1,2,-1/2",
            "--out", str(out),
        )
        assert res.returncode == 0
        assert json.loads(out.read_text())["probe_grid"]["a"] == ["1", "2", "-1/2"]

    def test_worker_pool_env(self, spec_files, tmp_path):
        out = tmp_path / "pooled.json"
        res = run_cli(
            "verify", "--spec", spec_files["kraw44"], "--out", str(out),
            env_extra={"MVOP_THREADS": "4"},
        )
        assert res.returncode == 0
        assert json.loads(out.read_text())["pass"] is True


class TestLimits:
    def test_csv_output(self, spec_files):
        res = run_cli("limits", "--spec", spec_files["kc"], "--format", "csv")
        assert res.returncode == 0
        lines = res.stdout.strip().splitlines()
        assert lines[0].startswith("ladder,max_abs_error")
        assert len(lines) == 4

    def test_single_step_ladder_exits_2(self, tmp_path):
        p = tmp_path / "short.json"
        p.write_text(json.dumps({**KC_TRANSITION, "ladder": ["100"]}))
        res = run_cli("limits", "--spec", str(p))
        assert res.returncode == 2

    def test_mu_column_present(self, tmp_path):
        p = tmp_path / "hk.json"
        p.write_text(
            json.dumps(
                {
                    "name": "hahn->krawtchouk",
                    "n": 1,
                    "a": "1",
                    "ladder": ["100", "1000"],
                    "params": {"p": "1/2", "N": "4"},
                }
            )
        )
        res = run_cli("limits", "--spec", str(p), "--format", "csv")
        assert res.returncode == 0
        assert "mu_n" in res.stdout.splitlines()[0]


class TestExport:
    def test_polynomial_latex(self, spec_files):
        res = run_cli("export", "--spec", spec_files["kraw44"], "--what", "Q", "--n", "1",
                      "--format", "latex")
        assert res.returncode == 0
        assert "x - 2" in res.stdout

    def test_operator_json(self, spec_files):
        res = run_cli("export", "--spec", spec_files["kraw44"], "--what", "D")
        assert res.returncode == 0
        data = json.loads(res.stdout)
        assert set(["D", "Lambda"]) <= set(data)

    def test_recurrence(self, spec_files):
        res = run_cli("export", "--spec", spec_files["kraw44"], "--what", "recurrence", "--n", "1")
        assert res.returncode == 0
        data = json.loads(res.stdout)
        assert data["A"][0][0] == "1"


def test_byte_identical_reruns(spec_files):
    first = run_cli("family", "--spec", spec_files["kraw44"], "--n", "3")
    second = run_cli("family", "--spec", spec_files["kraw44"], "--n", "3")
    assert first.stdout == second.stdout
    lim1 = run_cli("limits", "--spec", spec_files["kc"], "--format", "csv")
    lim2 = run_cli("limits", "--spec", spec_files["kc"], "--format", "csv")
    assert lim1.stdout == lim2.stdout
