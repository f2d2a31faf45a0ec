import json
import os
import subprocess
import sys

ENV = {k: v for k, v in os.environ.items() if not k.startswith("INTLAB_")}


def run_cli(*args, env_extra=None, cwd=None):
    env = dict(ENV)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "intlab.cli", *args],
                          capture_output=True, text=True, env=env, cwd=cwd)


def test_suite_list():
    r = run_cli("suite", "list")
    assert r.returncode == 0
    names = r.stdout.split()
    assert "bt-core" in names and "f0f1" in names


def test_unknown_suite_is_usage_error():
    r = run_cli("suite", "run", "--name", "nope")
    assert r.returncode == 2


def test_residual_pass_and_exit_zero(tmp_path):
    out = tmp_path / "rep.json"
    r = run_cli("residual", "--eq", "kdv", "--sol", "rational-omega1",
                "--lambda=1", "--grid", "x=-5:5:8,t=0.1:1:4",
                "--tol", "1e-9", "--out", str(out))
    assert r.returncode == 0, r.stderr
    rep = json.loads(out.read_text())
    assert rep["pass"] is True
    assert rep["equation"] == "kdv"
    assert set(rep["points"][0]) == {"x", "t", "raw_re", "raw_im", "rel"}


def test_residual_seed_member():
    r = run_cli("residual", "--eq", "skdv", "--sol", "seed.g", "--lambda=1",
                "--grid", "x=-3:3:5,t=0.1:1:4")
    assert r.returncode == 0, r.stderr


def test_residual_tuple_equation_via_seed():
    r = run_cli("residual", "--eq", "bt-x", "--sol", "seed", "--lambda=1",
                "--grid", "x=-3:3:5,t=0.1:1:3", "--format", "csv")
    assert r.returncode == 0, r.stderr
    assert r.stdout.splitlines()[0] == "x,t,raw_re,raw_im,rel"


def test_degenerate_grid_is_usage_error():
    r = run_cli("residual", "--eq", "kdv", "--sol", "rational-omega1",
                "--grid", "x=0:0:1")
    assert r.returncode == 2
    assert "degenerate" in r.stderr


def test_unknown_equation_is_usage_error():
    r = run_cli("residual", "--eq", "zzz", "--sol", "rational-omega1")
    assert r.returncode == 2


def test_failing_check_exits_one():
    r = run_cli("residual", "--eq", "kdv", "--sol", "rational-omega2-printed",
                "--grid", "x=-2:2:4,t=0.1:1:3", "--tol", "1e-30")
    assert r.returncode == 1


def test_deterministic_reports(tmp_path):
    outs = []
    for k in (1, 2):
        out = tmp_path / f"r{k}.json"
        r = run_cli("residual", "--eq", "kdv", "--sol", "rational-omega1",
                    "--grid", "x=-5:5:6,t=0.1:1:4", "--out", str(out))
        assert r.returncode == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_env_overrides_flag(tmp_path):
    r = run_cli("residual", "--eq", "kdv", "--sol", "rational-omega1",
                "--grid", "x=-5:5:5,t=0.1:1:3", "--tol", "1e-9",
                env_extra={"INTLAB_TOL": "1e-30"})
    assert r.returncode == 1  # the absurd env tolerance wins over the flag


def test_config_file_weakest_layer(tmp_path):
    cfg = tmp_path / "intlab.cfg"
    cfg.write_text("tol = 1e-30\n# comment\n")
    r = run_cli("--config", str(cfg), "residual", "--eq", "kdv",
                "--sol", "rational-omega1", "--grid", "x=-5:5:5,t=0.1:1:3",
                "--tol", "1e-9")
    assert r.returncode == 0  # flag overrides the config file


def test_flow_zero_trajectory(tmp_path):
    prefix = str(tmp_path / "zf")
    r = run_cli("flow", "f0", "--n", "1", "--q0", "0", "--p0", "0",
                "--out", prefix)
    assert r.returncode == 0
    summary = json.loads((tmp_path / "zf-summary.json").read_text())
    assert summary["singular"] is False
    rows = (tmp_path / "zf-trajectory.csv").read_text().splitlines()
    assert rows[0].startswith("var,q1_re")
    assert all(float(row.split(",")[1]) == 0.0 for row in rows[1:])


def test_flow_pii_from_rational(tmp_path):
    prefix = str(tmp_path / "zp")
    r = run_cli("flow", "pii", "--from-rational", "--end", "3",
                "--out", prefix)
    assert r.returncode == 0
    summary = json.loads((tmp_path / "zp-summary.json").read_text())
    assert summary["rational_match_max_err"] < 1e-9


def test_flow_component_count_limit(tmp_path):
    r = run_cli("flow", "f0", "--n", "9", "--out", str(tmp_path / "x"))
    assert r.returncode == 2


def test_flow_blowup_flagged_exit_zero(tmp_path):
    prefix = str(tmp_path / "zr")
    r = run_cli("flow", "riccati", "--sol", "zero", "--lambda=1",
                "--u1-0", "3", "--end", "5", "--out", prefix)
    assert r.returncode == 0  # tool succeeded; the blow-up is in the summary
    summary = json.loads((tmp_path / "zr-summary.json").read_text())
    assert summary["singular"] is True
