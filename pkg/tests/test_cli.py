import json

import numpy as np
import pytest

from jacobiflow.cli import EXIT_CONFIG, EXIT_OK, EXIT_VERIFY, main


def test_list_systems(capsys):
    assert main(["list-systems"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out == ["contact-damped-oscillator", "contact-free-particle", "so3-lie-poisson"]


def test_run_csv_output(tmp_path):
    out = tmp_path / "traj.csv"
    rc = main(
        [
            "run",
            "--system",
            "contact-damped-oscillator",
            "--dt",
            "0.05",
            "--steps",
            "20",
            "--output",
            str(out),
        ]
    )
    assert rc == EXIT_OK
    text = out.read_text(encoding="utf-8")
    assert "\r" not in text
    lines = text.splitlines()
    assert lines[0] == "step,time,q,p,z,t,H,H_P,newton_iters,residual"
    assert len(lines) == 22  # header + initial row + 20 steps
    first = lines[1].split(",")
    assert first[0] == "0"
    assert float(first[2]) == 1.0  # q0
    last = lines[-1].split(",")
    assert int(last[0]) == 20
    assert float(last[1]) == pytest.approx(1.0)
    # 17 significant digits are preserved for float columns
    assert len(last[2].replace("-", "").replace(".", "").replace("e", "").lstrip("0")) >= 15


def test_run_json_output(tmp_path):
    out = tmp_path / "traj.json"
    rc = main(["run", "--system", "so3-lie-poisson", "--dt", "0.02", "--steps", "5",
               "--format", "json", "--output", str(out)])
    assert rc == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["system"] == "so3-lie-poisson"
    assert len(payload["rows"]) == 6
    assert "m_squared" in payload["rows"][0]
    c = [row["m_squared"] for row in payload["rows"]]
    assert max(abs(v - c[0]) for v in c) < 1e-10


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"system": "contact-free-particle", "dt": 0.1, "steps": 3}))
    out = tmp_path / "a.csv"
    rc = main(["run", "--config", str(cfg), "--steps", "7", "--output", str(out)])
    assert rc == EXIT_OK
    lines = out.read_text().splitlines()
    assert len(lines) == 9  # header + 8 rows: the flag wins over the config value


def test_bad_config_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    assert main(["run", "--config", str(bad)]) == EXIT_CONFIG
    assert main(["run", "--system", "nope"]) == EXIT_CONFIG
    assert main(["run", "--dt", "-0.1"]) == EXIT_CONFIG
    assert main(["run", "--steps", "0"]) == EXIT_CONFIG
    assert main(["run", "--order", "9"]) == EXIT_CONFIG


def test_verify_good_system(tmp_path):
    out = tmp_path / "verify.json"
    rc = main(["verify", "--system", "so3-lie-poisson", "--output", str(out)])
    assert rc == EXIT_OK
    payload = json.loads(out.read_text())
    assert set(payload) >= {"jacobi_identity", "pi_homogeneity", "realization", "step_defects"}
    assert payload["passed"] is True


def test_verify_broken_structure_exits_4(tmp_path):
    out = tmp_path / "verify.json"
    rc = main(["verify", "--system", "broken-demo", "--output", str(out)])
    assert rc == EXIT_VERIFY
    payload = json.loads(out.read_text())
    assert payload["jacobi_identity"]["passed"] is False


def test_convergence_self_test(tmp_path):
    out = tmp_path / "conv.json"
    rc = main(["convergence", "--self-test", "--output", str(out)])
    assert rc == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["self_test_passed"] is True
    assert payload["fitted_order"] == pytest.approx(2.0, abs=0.1)


def test_convergence_custom_dts(tmp_path):
    out = tmp_path / "conv.json"
    rc = main(["convergence", "--system", "contact-damped-oscillator",
               "--dt", "0.1", "0.05", "--t-final", "0.5", "--output", str(out)])
    assert rc == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["errors"][1] < payload["errors"][0]


def test_usage_error_exit_code():
    assert main(["run", "--dt", "abc"]) == 2
