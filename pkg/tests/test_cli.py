import subprocess
import sys

import numpy as np
import pytest

from paretolab import __version__, landscapes
from paretolab.cli import run


def cli(*args):
    return subprocess.run([sys.executable, "-m", "paretolab.cli", *args],
                          capture_output=True, text=True)


def test_version():
    out = cli("--version")
    assert out.returncode == 0
    assert out.stdout.strip() == f"pareto-lab {__version__}"


def test_usage_error_exit_code():
    out = cli("no-such-command")
    assert out.returncode == 2
    assert out.stderr


def test_missing_required_flag_exit_code():
    out = cli("generate", "--n", "4")
    assert out.returncode == 2


def test_generate_pareto_pipeline(tmp_path):
    inst_path = tmp_path / "i.nk"
    out = cli("generate", "--n", "8", "--k", "0", "--m", "3", "--seed", "5",
              "--out", str(inst_path))
    assert out.returncode == 0
    inst = landscapes.load_instance(inst_path)
    assert inst == landscapes.generate_instance(8, 0, 3, 5)

    out = cli("pareto", "--instance", str(inst_path))
    assert out.returncode == 0
    want = landscapes.proportion_pareto_optimal(inst)
    assert repr(want) in out.stdout


def test_generate_identical_for_identical_seeds(tmp_path):
    a = tmp_path / "a.nk"
    b = tmp_path / "b.nk"
    cli("generate", "--n", "6", "--k", "1", "--m", "2", "--seed", "9", "--out", str(a))
    cli("generate", "--n", "6", "--k", "1", "--m", "2", "--seed", "9", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_evaluate_bits(tmp_path):
    inst_path = tmp_path / "i.nk"
    cli("generate", "--n", "4", "--k", "0", "--m", "2", "--seed", "1",
        "--out", str(inst_path))
    out = cli("evaluate", "--instance", str(inst_path), "--bits", "0101")
    inst = landscapes.load_instance(inst_path)
    want = landscapes.evaluate(inst, "0101")
    got = np.array([float(t) for t in out.stdout.strip().split(",")])
    assert np.allclose(got, want, atol=0)


def test_hv_fixture(tmp_path):
    pts = tmp_path / "p.csv"
    pts.write_text("0.5,1\n1,0.5\n")
    out = cli("hv", "--points", str(pts), "--ref", "0,0")
    assert out.returncode == 0
    assert float(out.stdout.strip()) == pytest.approx(0.75)


def test_hv_mc_fixture(tmp_path):
    pts = tmp_path / "p.csv"
    pts.write_text("0.5,1\n1,0.5\n")
    out = cli("hv-mc", "--points", str(pts), "--ref", "0,0",
              "--target-width", "0.02", "--seed", "7")
    assert out.returncode == 0
    assert "value=" in out.stdout and "samples=" in out.stdout
    again = cli("hv-mc", "--points", str(pts), "--ref", "0,0",
                "--target-width", "0.02", "--seed", "7")
    assert again.stdout == out.stdout


def test_hv_malformed_points(tmp_path):
    pts = tmp_path / "p.csv"
    pts.write_text("0.5,oops\n")
    out = cli("hv", "--points", str(pts), "--ref", "0,0")
    assert out.returncode == 1
    assert "malformed" in out.stderr


def test_scalarize_matches_library(tmp_path):
    from paretolab import scalarization

    inst_path = tmp_path / "i.nk"
    cli("generate", "--n", "7", "--k", "0", "--m", "3", "--seed", "3",
        "--out", str(inst_path))
    out = cli("scalarize", "--instance", str(inst_path),
              "--functional", "wsum", "--weights", "1,1,1")
    inst = landscapes.load_instance(inst_path)
    bits, _, _ = scalarization.scalarize_landscape(
        inst, lambda y: scalarization.weighted_sum(y, [1, 1, 1]))
    assert f"bits={bits}" in out.stdout


def test_scalarize_eps_requires_bounds(tmp_path):
    inst_path = tmp_path / "i.nk"
    cli("generate", "--n", "4", "--k", "0", "--m", "2", "--seed", "3",
        "--out", str(inst_path))
    out = cli("scalarize", "--instance", str(inst_path), "--functional", "eps")
    assert out.returncode == 2


def test_weights_file(tmp_path):
    out_path = tmp_path / "w.txt"
    out = cli("weights", "--m", "3", "--H", "2", "--out", str(out_path))
    assert out.returncode == 0
    lines = out_path.read_text().splitlines()
    assert len(lines) == 6
    assert lines[0] == "0.0,0.0,1.0"


def test_experiment_writes_csv_and_checks(tmp_path):
    out = cli("experiment", "weight-distances", "--out", str(tmp_path),
              "--check", "--set", "m_values=2,14", "--set", "pairs=400")
    assert out.returncode == 0
    assert (tmp_path / "weight-distances.csv").exists()
    assert "[PASS]" in out.stdout


def test_experiment_check_failure_exit_code(tmp_path):
    # undersized sampling makes the m=2 band check fail deterministically
    out = cli("experiment", "weight-distances", "--out", str(tmp_path),
              "--check", "--set", "m_values=2,14", "--set", "pairs=1",
              "--set", "seed=6")
    if "[FAIL]" in out.stdout:
        assert out.returncode == 1
    else:
        assert out.returncode == 0


def test_experiment_config_file(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("m_values = 2 3\nreps = 10\n")
    out = cli("experiment", "heterogeneity", "--config", str(cfg),
              "--out", str(tmp_path))
    assert out.returncode == 0
    text = (tmp_path / "heterogeneity.csv").read_text()
    assert text.splitlines()[1] == "distribution,m,rep,min_diff,max_diff"


def test_run_function_exit_codes(tmp_path):
    pts = tmp_path / "p.csv"
    pts.write_text("0.5,0.5\n")
    assert run(["hv", "--points", str(pts), "--ref", "0,0"]) == 0
    missing = run(["hv", "--points", str(tmp_path / "nope.csv"), "--ref", "0,0"])
    assert missing == 1


def test_experiment_pareto_proportion_check_passes(tmp_path):
    out = cli("experiment", "pareto-proportion", "--out", str(tmp_path),
              "--check", "--jobs", "4")
    assert out.returncode == 0
    assert out.stdout.count("[PASS]") == 3
