"""
Integration tests for the brown-measure command line
"""

import json
import sys
from pathlib import Path

import pandas as pd
import pytest
from click.testing import CliRunner

sys.path.insert(0, str(Path(__file__).parent.parent))

from src import __version__
from src.cli import main

pytestmark = pytest.mark.integration


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, [str(a) for a in args], catch_exceptions=False)


class TestTables:
    """Subcommands that tabulate closed forms"""

    def test_region(self, runner, tmp_path):
        result = invoke(runner, "region", "--t", 2, "--n", 32, "--out", tmp_path, "--svg")
        assert result.exit_code == 0, result.output
        frame = pd.read_csv(tmp_path / "region_t2.csv")
        assert list(frame.columns) == ["theta", "r_outer", "r_inner"]
        assert len(frame) == 32
        assert (tmp_path / "region_t2.svg").exists()

    def test_density(self, runner, tmp_path):
        result = invoke(runner, "density", "--t", 1, "--n", 32, "--out", tmp_path)
        assert result.exit_code == 0, result.output
        assert len(pd.read_csv(tmp_path / "density_t1.csv")) == 32
        sidecar = json.loads((tmp_path / "density_t1.json").read_text(encoding="utf-8"))
        assert sidecar["mass"] == pytest.approx(1.0, abs=1e-6)

    def test_biane_and_shadow(self, runner, tmp_path):
        assert invoke(runner, "biane", "--t", 2, "--n", 64, "--out", tmp_path).exit_code == 0
        assert invoke(runner, "shadow", "--t", 2, "--n", 64, "--out", tmp_path).exit_code == 0
        assert (tmp_path / "biane_t2.csv").exists()
        shadow = json.loads((tmp_path / "shadow_t2.json").read_text(encoding="utf-8"))
        assert shadow["quantile_consistency"] <= 1e-6

    def test_hj(self, runner, tmp_path):
        result = invoke(runner, "hj", "--lambda0", "2+1j", "--x0", 1, "--t", 0.1, "--out", tmp_path)
        assert result.exit_code == 0, result.output
        report = json.loads((tmp_path / "hj_t0.1.json").read_text(encoding="utf-8"))
        assert max(report["drift"].values()) <= 1e-8
        frame = pd.read_csv(tmp_path / "hj_t0.1.csv")
        assert frame["t"].iloc[-1] == pytest.approx(0.1)

    def test_hj_past_lifetime(self, runner, tmp_path):
        """Times past the lifetime stop short of the blowup"""
        result = invoke(runner, "hj", "--lambda0", "2", "--x0", 1, "--t", 5, "--out", tmp_path)
        assert result.exit_code == 0, result.output
        assert (tmp_path / "hj_t5.csv").exists()

    def test_simulate_unitary(self, runner, tmp_path):
        args = ["simulate", "--group", "U", "--N", 8, "--t", 0.5, "--samples", 2, "--out", tmp_path]
        result = invoke(runner, *args)
        assert result.exit_code == 0, result.output
        assert len(pd.read_csv(tmp_path / "eigenvalues_t0.5.csv")) == 16
        report = json.loads((tmp_path / "report_t0.5.json").read_text(encoding="utf-8"))
        assert report["count"] == 16

    def test_simulate_angle_histogram(self, runner, tmp_path):
        """--svg on simulate writes the eigen-angle histogram beside the predicted density"""
        for group in ("GL", "U"):
            out = tmp_path / group
            args = ["simulate", "--group", group, "--N", 40, "--t", 2, "--samples", 2, "--n", 32]
            result = invoke(runner, *args, "--svg", "--out", out)
            assert result.exit_code == 0, result.output
            text = (out / "angles_t2.svg").read_text(encoding="utf-8")
            assert text.count("<polyline") == 2


class TestConfiguration:
    """Flag and config-file handling"""

    def test_version(self, runner):
        result = invoke(runner, "--version")
        assert __version__ in result.output

    def test_print_config(self, runner, tmp_path):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"t": 3.0, "n": 64}), encoding="utf-8")
        result = invoke(runner, "density", "--t", 5, "--config", config, "--print-config", "--out", tmp_path)
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["t"] == 5.0
        assert data["n"] == 64
        assert data["subcommand"] == "density"
        assert not (tmp_path / "density_t5.csv").exists()

    def test_bad_flag_value(self, runner, tmp_path):
        result = invoke(runner, "region", "--t", -1, "--out", tmp_path)
        assert result.exit_code == 2

    def test_bad_config_file(self, runner, tmp_path):
        config = tmp_path / "bad.json"
        config.write_text('{"colour": "blue"}', encoding="utf-8")
        result = invoke(runner, "region", "--config", config, "--out", tmp_path)
        assert result.exit_code == 2

    def test_zero_lifetime_start(self, runner, tmp_path):
        """A characteristic from lambda0 = 1, x0 = 0 is a configuration error"""
        result = invoke(runner, "hj", "--lambda0", "1", "--x0", 0, "--out", tmp_path)
        assert result.exit_code == 2
        assert not (tmp_path / "hj_t2.csv").exists()

    def test_coarse_simulation_grid(self, runner, tmp_path):
        result = invoke(runner, "simulate", "--t", 2, "--steps", 10, "--N", 4, "--out", tmp_path)
        assert result.exit_code == 2


@pytest.mark.slow
def test_verify_quick(runner, tmp_path):
    result = invoke(runner, "verify", "--quick", "--out", tmp_path)
    assert result.exit_code == 0, result.output
    report = json.loads((tmp_path / "verify_report.json").read_text(encoding="utf-8"))
    assert report["status"] == "PASS"
    assert report["quick"] is True
