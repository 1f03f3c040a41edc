import cmath
import json
import math
import os
import subprocess

import pytest

import efk

CLI = os.environ.get("EFK_CLI")


def test_version_and_seeds():
    assert efk.version().count(".") == 2
    assert efk.job_seed(7, "a") == efk.job_seed(7, "a")
    assert efk.job_seed(7, "a") != efk.job_seed(7, "b")


def test_theta_small_rank():
    assert efk.theta(1, 3).count("[") == 2
    with pytest.raises(efk.ParamError):
        efk.theta(4, 3)


def test_special_functions():
    z = 0.31 + 0.17j
    assert abs(efk.wp(z) - efk.wp(-z)) < 1e-9
    assert abs(efk.theta1(-z) + efk.theta1(z)) < 1e-9
    assert abs(efk.jacobi_sn(0.7 + 0.1j, 0) - cmath.sin(0.7 + 0.1j)) < 1e-9
    lam = 0.2 + 0.1j
    lhs = efk.sigma_lambda(z, lam) * efk.sigma_lambda(-z, lam)
    assert abs(lhs - (efk.wp(lam) - efk.wp(z))) < 1e-9 * max(1.0, abs(lhs))


def test_b2_hilbert_ranks():
    expected = [1, 4, 8, 12, 14, 12]
    assert efk.hilbert_ranks("B2", 5) == expected
    # Coefficients of (1+t)^4 (1+t^2)^2.
    poly = [1]
    for factor in [[1, 1]] * 4 + [[1, 0, 1]] * 2:
        poly = [sum(poly[i] * factor[d - i] for i in range(len(poly)) if 0 <= d - i < len(factor))
                for d in range(len(poly) + len(factor) - 1)]
    assert poly[:6] == expected


def test_pieri_instance_selects_x():
    out = efk.verify_pieri(4, 2, [1, 2])
    assert out["winners"] == ["x"]
    assert out["verdict"] == "member"


def test_run_is_deterministic():
    a, code_a, _ = efk.run("verify pieri", n=3, seed=11)
    b, code_b, _ = efk.run("verify pieri", n=3, seed=11)
    assert code_a == code_b == 0
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["schema"] == "efk-report/1"
    assert a["config"]["seed"] == 11


def test_bad_config_raises():
    with pytest.raises(efk.ConfigError):
        efk.run("verify identities", n=0)


@pytest.mark.skipif(CLI is None, reason="command-line binary path not provided")
def test_cli_exit_codes_and_reports(tmp_path):
    first = tmp_path / "a.json"
    contents = []
    for _ in range(2):
        done = subprocess.run([CLI, "verify", "identities", "--n", "3", "--seed", "7", "--out", str(first)],
                              capture_output=True, text=True)
        assert done.returncode == 0, done.stdout + done.stderr
        contents.append(first.read_bytes())
    assert contents[0] == contents[1]
    report = json.loads(first.read_text())
    assert report["verdict"] == "PASS"
    assert report["config"]["subcommand"] == "verify identities"

    bad = subprocess.run([CLI, "verify", "identities", "--n", "0"], capture_output=True, text=True)
    assert bad.returncode == 2

    hilbert = subprocess.run([CLI, "hilbert", "--type", "B2", "--max-degree", "5", "--out", str(first)],
                             capture_output=True, text=True)
    assert hilbert.returncode == 0
    ranks = [j["result"]["rank"] for j in json.loads(first.read_text())["jobs"] if j["id"].startswith("hilbert/")]
    assert ranks == [1, 4, 8, 12, 14, 12]


@pytest.mark.skipif(CLI is None, reason="command-line binary path not provided")
def test_cli_config_file_and_seed_env(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 3, "k": 2, "phi": "x"}))
    out = tmp_path / "r.json"
    env = dict(os.environ, EFK_SEED="99")
    done = subprocess.run([CLI, "verify", "pieri", "--config", str(cfg), "--out", str(out)], env=env,
                          capture_output=True, text=True)
    assert done.returncode == 0, done.stdout + done.stderr
    report = json.loads(out.read_text())
    assert report["config"]["seed"] == 99
    assert report["config"]["k"] == 2
    assert report["config"]["phi"] == "x"
    assert math.isfinite(report["summary"]["total"])
