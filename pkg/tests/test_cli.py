import json
import subprocess
import sys

import numpy as np
import pytest

from riccati_flow.cli import Config, ConfigError, flatten, main
from riccati_flow.export import read_csv, read_vtk


def run(tmp_path, command, config, *extra, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(config))
    out = tmp_path / "out"
    code = main([command, "--config", str(path), "--out", str(out), *extra])
    return code, out


def summary(capsys):
    return dict(line.split("=", 1) for line in capsys.readouterr().out.splitlines())


def test_flatten_nested():
    assert flatten({"a": {"b": 1, "c": {"d": 2}}, "e": 3}) == {"a.b": 1, "a.c.d": 2, "e": 3}
    assert Config({"grid": {"h": 0.1}, "grid.dims": [3, 3, 3]}).data == {"grid.h": 0.1, "grid.dims": [3, 3, 3]}


def test_config_validation_messages():
    cfg = Config({"flow.nu": -1, "grid.dims": [3, "x", 3], "time.dt": True})
    with pytest.raises(ConfigError, match="flow.nu"):
        cfg.number("flow.nu", 0.1, positive=True)
    with pytest.raises(ConfigError, match="time.dt"):
        cfg.number("time.dt", 1e-3)
    with pytest.raises(ConfigError, match="missing.key"):
        cfg.number("missing.key")


def test_trkal_default_scenario(tmp_path, capsys):
    code, out = run(tmp_path, "verify", {"grid": {"dims": [11, 11, 11], "h": 0.05}})
    s = summary(capsys)
    assert code == 0 and s["status"] == "pass"
    assert s["gate.t0.momentum"].startswith("pass")
    grid, u, p = read_vtk(out / "fields_000.vtk")
    assert grid.dims == (11, 11, 11) and np.all(np.isfinite(u))
    assert (out / "residuals.csv").read_text().startswith("t,residual,value")


def test_small_grid_is_config_error(tmp_path, capsys):
    code, _ = run(tmp_path, "verify", {"grid": {"dims": [2, 2, 2]}})
    err = capsys.readouterr().err
    assert code == 2 and "grid.dims" in err


def test_broken_pressure_fails_gate(tmp_path, capsys):
    code, _ = run(tmp_path, "verify", {"flow": {"pressure": "zero"}, "grid": {"dims": [7, 7, 7], "h": 0.1}})
    s = summary(capsys)
    assert code == 1 and s["gate.t0.momentum"].startswith("FAIL") and s["status"] == "fail"


def test_tolerance_scale(tmp_path, capsys):
    cfg = {"flow": {"pressure": "zero"}, "grid": {"dims": [7, 7, 7], "h": 0.1}}
    code, _ = run(tmp_path, "verify", cfg, "--tolerance-scale", "1e4")
    assert code == 0
    code, _ = run(tmp_path, "verify", cfg, "--tolerance-scale", "-1")
    assert code == 2


@pytest.mark.parametrize("config, key", [
    ({"abc": {"kappa": 2.0}}, "abc.kappa"),
    ({"flow": {"nu": 0}}, "flow.nu"),
    ({"flow": {"kind": "other"}}, "flow.kind"),
    ({"verify": {"times": [0.0]}}, "verify.times"),
    ({"verify": {"order": 3}}, "verify.order"),
    ({"flow": {"kind": "assembled"}}, "grid.origin"),
])
def test_precondition_violations_point_at_key(tmp_path, capsys, config, key):
    code, _ = run(tmp_path, "verify", {"grid": {"dims": [5, 5, 5]}, **config})
    assert code == 2 and key in capsys.readouterr().err


def test_missing_and_malformed_config(tmp_path, capsys):
    assert main(["verify", "--config", str(tmp_path / "nope.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", "--config", str(bad), "--out", str(tmp_path)]) == 2
    assert main(["bogus", "--config", str(bad)]) == 2


def test_simulate_rotation(tmp_path, capsys):
    code, out = run(tmp_path, "simulate", {"riccati": {"w": [0, 0, 1]}, "time": {"t1": 1.0, "dt": 0.01}})
    s = summary(capsys)
    assert code == 0 and s["escaped"] == "false"
    header, rows = read_csv(out / "trajectory.csv")
    assert header == ["t", "a", "b", "U", "V", "W"]
    np.testing.assert_allclose(rows[:, 1], np.cos(rows[:, 0]), atol=1e-9)


def test_simulate_reports_escape(tmp_path, capsys):
    code, _ = run(tmp_path, "simulate", {"riccati": {"state0": [0, 0], "w": [0, 1, 0]}, "time": {"t1": 5.0}})
    s = summary(capsys)
    assert code == 0 and s["escaped"] == "true" and abs(float(s["escape_time"]) - np.pi) < 1e-2


@pytest.mark.parametrize("case, params", [
    ("tangent", {}),
    ("circle", {"circle": {"lambda": 0.5}}),
    ("bernoulli", {"bernoulli": {"A": 1, "B": -3, "D": 2, "delta": 1, "epsilon": 1, "a0": 1.5}}),
    ("algebraic", {"algebraic": {"A": 1, "B": 2}}),
    ("elliptic", {"elliptic": {"C": 2, "R_coef": 0.3, "a0": 1.0}}),
])
def test_closed_form_cases_pass(tmp_path, capsys, case, params):
    code, out = run(tmp_path, "closed-form", {"closed_form": {"case": case}, "time": {"t1": 0.5, "dt": 1e-3}, **params})
    assert code == 0, capsys.readouterr()
    assert (out / "timeseries.csv").exists()


def test_printed_tangent_form_fails_gate(tmp_path, capsys):
    code, _ = run(tmp_path, "closed-form", {"tangent": {"convention": "printed"}, "time": {"t1": 1.0}})
    assert code == 1


def test_bernoulli_condition_violation(tmp_path, capsys):
    cfg = {"closed_form": {"case": "bernoulli"},
           "bernoulli": {"A": 1, "B": 0, "D": 1, "delta": 1, "epsilon": 1, "a0": 0.0}}
    code, _ = run(tmp_path, "closed-form", cfg)
    assert code == 2 and "bernoulli.D" in capsys.readouterr().err


def test_convergence_command(tmp_path, capsys):
    code, out = run(tmp_path, "convergence", {"convergence": {"hs": [0.2, 0.1, 0.05]}})
    s = summary(capsys)
    assert code == 0 and s["gate.order.momentum"].startswith("pass")
    assert s["order.continuity"] == "exact"
    assert (out / "convergence.csv").exists()
    code, _ = run(tmp_path, "convergence", {"convergence": {"hs": [0.3, 0.15, 0.075]}})
    assert code == 2


def test_export_and_figures(tmp_path, capsys):
    code, out = run(tmp_path, "export", {"grid": {"dims": [3, 3, 3], "h": 0.5}, "export": {"times": [0.0, 1.0]}})
    assert code == 0
    assert sorted(p.name for p in out.iterdir()) == ["fields_000.csv", "fields_000.vtk",
                                                     "fields_001.csv", "fields_001.vtk"]
    code, out = run(tmp_path, "closed-form", {"tangent": {"wy_decay": 1.0}, "time": {"t1": 2.0, "dt": 1e-2}},
                    "--figures")
    assert code == 0 and (out / "timeseries.png").stat().st_size > 0


def test_runs_are_deterministic(tmp_path, capsys):
    cfg = {"grid": {"dims": [6, 6, 6], "h": 0.1}, "output": {"csv": True}}
    _, out = run(tmp_path, "verify", cfg)
    first = {p.name: p.read_bytes() for p in out.iterdir()}
    _, out = run(tmp_path, "verify", cfg)
    assert first == {p.name: p.read_bytes() for p in out.iterdir()}


def test_console_entry_point(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"grid": {"dims": [2, 2, 2]}}))
    proc = subprocess.run([sys.executable, "-m", "riccati_flow.cli", "verify", "--config", str(cfg),
                           "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 2 and "grid.dims" in proc.stderr
