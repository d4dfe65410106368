import json
import subprocess
import sys

import numpy as np
import pytest

from nozzleshock import cli
from nozzleshock.report import polyline_points, read_csv, svg_plot


def run(*argv):
    return cli.main([str(a) for a in argv])


def test_states_table(capsys, tmp_path):
    assert run("states", "--model", "HP", "--gamma", 1.4, "--M0sq", 1.2, "--out", tmp_path) == 0
    out = capsys.readouterr().out
    assert "x_s" in out and "0.7611940" in out
    table = json.loads((tmp_path / "states.json").read_text())
    assert table["admissibility"]["admissible"] is True
    assert table["x_s"] == pytest.approx(0.76119403, abs=1e-8)


def test_states_not_supersonic(capsys):
    assert run("states", "--model", "HP", "--gamma", 1.4, "--M0sq", 1.0) == 2
    assert "NotSupersonic" in capsys.readouterr().err


def test_states_inadmissible(capsys):
    assert run("states", "--model", "VP", "--gamma", 1.4, "--M0sq", 8, "--delta", 1) == 2


def test_malformed_config(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("model = HP\ngamma\n")
    assert run("states", "--config", bad) == 1
    bad.write_text('{"model": "HP", "gamma": 1.4, ')
    assert run("states", "--config", bad) == 1
    bad.write_text('model = HP\ngamma = 1.4\nM0sq = 1.2\nbogus = 3\n')
    assert run("states", "--config", bad) == 1
    assert run("states", "--model", "HP") == 1
    assert run("frobnicate") == 1


def test_config_grammar():
    text = """
    # comment line
    model = VB
    gamma: 1.4      # trailing comment
    q0 = 1.5
    delta = 0.5
    params = [0.1, 0.01]
    branch = near-zero
    """
    cfg = cli.build_config(cli.parse_config_text(text))
    assert cfg.model.value == "VB" and cfg.q0 == 1.5 and cfg.params == (0.1, 0.01)
    js = cli.build_config(cli.parse_config_text(
        '{"model": "VB", "gamma": 1.4, "q0": 1.5, "delta": 0.5, "params": [0.1, 0.01],'
        ' "branch": "near-zero"}'))
    assert js == cfg


def test_epsilon_conversion():
    cfg = cli.build_config({"model": "HP", "gamma": 1.4, "M0sq": 1.2, "epsilon": [0.004]})
    assert cfg.params == pytest.approx((0.01,))
    assert cfg.echo()["epsilon"] == [0.004]
    with pytest.raises(cli.ConfigError):
        cli.build_config({"model": "VB", "gamma": 1.4, "q0": 1.5, "delta": 1, "epsilon": 0.1})


def test_geometric_config():
    cfg = cli.build_config({"model": "HP", "gamma": 1.4, "M0sq": 1.2, "param_start": 0.1,
                            "param_factor": 0.5, "param_count": 3})
    assert cfg.params == (0.1, 0.05, 0.025)


def test_solve_hp_rows(tmp_path, capsys):
    assert run("solve", "--model", "HP", "--gamma", 1.4, "--M0sq", 1.2, "--param", 0.05,
               "--out", tmp_path) == 0
    lines = (tmp_path / "profile.csv").read_text().splitlines()
    assert len(lines) == 513
    assert lines[0] == "x,w,u,rho,p"
    cols, footer = read_csv(tmp_path / "profile.csv")
    assert cols["x"].size == 512 and footer == {}
    svg = (tmp_path / "profile.svg").read_text()
    assert 'viewBox="0 0 800 500"' in svg and "<script" not in svg
    assert svg.count("<polyline") == 4
    summary = json.loads((tmp_path / "solve.json").read_text())
    assert summary["alpha"]["branch"] == "NearZero"


def test_csv_round_trip(tmp_path):
    assert run("solve", "--model", "VB", "--gamma", 1.4, "--q0", 1.5, "--delta", 1,
               "--param", 0.01, "--out", tmp_path) == 0
    cols, _ = read_csv(tmp_path / "profile.csv")
    from nozzleshock import build_pair, reconstruct, reduce, solve_alpha
    m = reduce(build_pair("VB", 1.4, q0=1.5), "VB", 1.0)
    prof = reconstruct(m, 0.01, solve_alpha(m, 0.01)[0])
    for k, v in prof.columns().items():
        assert np.array_equal(cols[k], v)


def test_vp_divergent_footer(tmp_path):
    assert run("solve", "--model", "VP", "--gamma", 1.4, "--M0sq", 1.2, "--delta", 2,
               "--param", 1e-3, "--branch", "divergent", "--out", tmp_path) == 0
    cols, footer = read_csv(tmp_path / "profile.csv")
    assert "T" in cols
    assert float(footer["max_pressure"]) == pytest.approx(cols["p"].max(), rel=1e-15)
    assert float(footer["max_pressure"]) > 1e3


def test_vb_svg_monotone(tmp_path):
    assert run("solve", "--model", "VB", "--gamma", 1.4, "--q0", 1.5, "--delta", 0.5,
               "--param", 0.01, "--out", tmp_path) == 0
    pts = polyline_points((tmp_path / "profile.svg").read_text(), "u")
    # SVG y grows downward, so decreasing u means non-decreasing pixel y
    assert np.all(np.diff(pts[:, 0]) > 0)
    assert np.all(np.diff(pts[:, 1]) >= 0)


def test_solver_error_exit(tmp_path, capsys):
    assert run("solve", "--model", "VP", "--gamma", 1.4, "--M0sq", 1.2, "--delta", 2,
               "--param", 1e3, "--out", tmp_path) == 3
    assert capsys.readouterr().err.startswith("NoRootInDomain:")


def test_sweep_outputs(tmp_path):
    cfg = tmp_path / "hp.cfg"
    cfg.write_text("model = HP\ngamma = 1.4\nM0sq = 1.2\n"
                   "params = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3]\n")
    out = tmp_path / "out"
    assert run("sweep", "--config", cfg, "--out", out) == 0
    cols, _ = read_csv(out / "convergence.csv")
    assert np.all(np.diff(cols["l1_to_limit"]) < 0)
    assert np.all(np.diff(cols["param"]) < 0)
    man = json.loads((out / "manifest.json").read_text())
    assert len(man["points"]) == 5 and man["failures"] == []
    for p in man["points"]:
        assert (out / p["csv"]).exists() and (out / p["svg"]).exists()
    assert man["config"]["params"] == [0.1, 0.03, 0.01, 0.003, 0.001]
    assert "solve_seconds" in (out / "timings.json").read_text()
    assert "seconds" not in (out / "manifest.json").read_text()


def test_sweep_hb_plateau(tmp_path):
    assert run("sweep", "--model", "HB", "--gamma", 1.4, "--q0", 1.5,
               "--out", tmp_path, "--config", _write(tmp_path, "params = [0.1, 0.01, 0.001]")) == 0
    cols, _ = read_csv(tmp_path / "convergence.csv")
    assert np.all(np.diff(cols["plateau_measure"]) > 0)
    assert "plateau_measure" in (tmp_path / "convergence.svg").read_text()


def _write(tmp_path, text):
    p = tmp_path / "extra.cfg"
    p.write_text(text + "\n")
    return p


def test_sweep_empty(tmp_path, capsys):
    cfg = _write(tmp_path, "model = HP\ngamma = 1.4\nM0sq = 1.2\nparams = []")
    assert run("sweep", "--config", cfg, "--out", tmp_path) == 1


def test_sweep_all_failed(tmp_path):
    cfg = _write(tmp_path, "model = VP\ngamma = 1.4\nM0sq = 1.2\ndelta = 2\nparams = [1e3, 1e4]")
    assert run("sweep", "--config", cfg, "--out", tmp_path) == 3
    man = json.loads((tmp_path / "manifest.json").read_text())
    assert len(man["failures"]) == 2


def test_sweep_partial_failure(tmp_path):
    cfg = _write(tmp_path, "model = VP\ngamma = 1.4\nM0sq = 1.2\ndelta = 2\nparams = [1e3, 1e-2]")
    assert run("sweep", "--config", cfg, "--out", tmp_path) == 0
    man = json.loads((tmp_path / "manifest.json").read_text())
    assert [p["status"] for p in man["points"]] == ["failed", "ok"]


def test_deterministic_bytes(tmp_path):
    cfg = _write(tmp_path, "model = VB\ngamma = 1.4\nq0 = 1.5\ndelta = 1\n"
                 "param_start = 0.1\nparam_factor = 0.1\nparam_count = 3")
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("sweep", "--config", cfg, "--out", a) == 0
    assert run("sweep", "--config", cfg, "--out", b) == 0
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    for n in names:
        if n != "timings.json":
            assert (a / n).read_bytes() == (b / n).read_bytes(), n


def test_oracle_pass(capsys):
    assert run("oracle", "--model", "HB", "--gamma", 1.4, "--q0", 1.5, "--param", 0.05) == 0
    assert capsys.readouterr().out.strip().endswith("PASS")
    assert run("oracle", "--model", "VB", "--gamma", 1.4, "--q0", 1.5, "--delta", 0.5,
               "--param", 0.01) == 0


def test_oracle_skipped(capsys):
    assert run("oracle", "--model", "VP", "--gamma", 1.4, "--M0sq", 1.2, "--delta", 1,
               "--param", 5e-4) == 0
    assert "SKIPPED" in capsys.readouterr().out


def test_oracle_tripwire(monkeypatch, capsys):
    monkeypatch.setattr(cli, "ORACLE_PROFILE_TOL", 0.0)
    assert run("oracle", "--model", "HP", "--gamma", 1.4, "--M0sq", 1.2, "--param", 0.05) == 4
    assert "FAIL" in capsys.readouterr().out


def test_svg_is_deterministic_text():
    a = svg_plot([("s", [0, 1, 2], [0.0, 0.5, 1.0])], title="t")
    assert a == svg_plot([("s", [0, 1, 2], [0.0, 0.5, 1.0])], title="t")
    assert a.startswith("<?xml") and "<polyline" in a


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "nozzleshock", "--version"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip()
