"""
Tests for run configuration merging and artifact writers
"""

import json
import sys
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.artifacts import artifact_name, histogram_outline, write_csv, write_json, write_svg_histogram, write_svg_polyline
from src.config import RunConfig, Subcommand, load_config_file, merge_config
from src.density import DensityRoute
from src.errors import ConfigError
from src.matsim import Group


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"t": 3.0, "n": 64, "route": "phi_jacobian"}), encoding="utf-8")
    return path


class TestMergeConfig:
    """Flags over file over defaults"""

    def test_defaults(self):
        """Without flags or file the defaults apply"""
        cfg = merge_config("density", {})
        assert cfg.subcommand is Subcommand.DENSITY
        assert cfg.t == 2.0
        assert cfg.route is DensityRoute.OMEGA
        assert cfg.group is Group.GL

    def test_file_values(self, config_file):
        """File values replace defaults"""
        cfg = merge_config("density", {}, config_file)
        assert cfg.t == 3.0
        assert cfg.n == 64
        assert cfg.route is DensityRoute.PHI_JACOBIAN

    def test_flags_win(self, config_file):
        """Explicit flags override the file"""
        cfg = merge_config("density", {"t": 5.0, "n": None}, config_file)
        assert cfg.t == 5.0
        assert cfg.n == 64

    def test_unknown_key(self, tmp_path):
        """Unknown configuration keys are rejected"""
        path = tmp_path / "bad.json"
        path.write_text('{"temperature": 1}', encoding="utf-8")
        with pytest.raises(ConfigError):
            merge_config("region", {}, path)

    @pytest.mark.parametrize("flags", [{"t": 0.0}, {"n": 4}, {"seed": -1}, {"lambda0": "0"}])
    def test_invalid_values(self, flags):
        """Out-of-range values raise ConfigError"""
        with pytest.raises(ConfigError):
            merge_config("region", flags)

    def test_unreadable_file(self, tmp_path):
        """Missing or malformed files raise ConfigError"""
        with pytest.raises(ConfigError):
            load_config_file(tmp_path / "missing.json")
        broken = tmp_path / "broken.json"
        broken.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config_file(broken)

    @pytest.mark.parametrize("flags", [{"lambda0": "1", "x0": 0.0}, {"lambda0": [1.0, 0.0], "x0": 0}])
    def test_zero_lifetime_start(self, flags):
        """lambda0 = 1 with x0 = 0 is rejected before any integration"""
        with pytest.raises(ConfigError, match="x0 > 0"):
            merge_config("hj", flags)
        assert merge_config("hj", {"lambda0": "1", "x0": 0.5}).lambda0 == 1

    @pytest.mark.parametrize("value", ["2+1j", "2 + 1j", [2.0, 1.0], 2 + 1j])
    def test_lambda0_forms(self, value):
        """lambda0 accepts complex literals and [re, im] pairs"""
        assert merge_config("hj", {"lambda0": value}).lambda0 == 2 + 1j

    def test_effective_steps(self):
        """steps defaults to ceil(100 t)"""
        assert RunConfig(t=2.5).effective_steps() == 250
        assert RunConfig(t=2.5, steps=1000).effective_steps() == 1000

    def test_json_dict(self):
        """Serialized configuration is plain JSON"""
        data = RunConfig(lambda0=2 + 1j).to_json_dict()
        assert data["lambda0"] == [2.0, 1.0]
        assert data["route"] == "omega"
        assert data["tolerances"]["root_tol"] == 1e-12
        json.dumps(data)


class TestArtifacts:
    """CSV, JSON and SVG writers"""

    def test_artifact_names(self):
        """Integral times drop the decimal point"""
        assert artifact_name("boundary", 2.0) == "boundary_t2.csv"
        assert artifact_name("boundary", 4.1) == "boundary_t4.1.csv"
        assert artifact_name("report", 0.5, "json") == "report_t0.5.json"

    def test_csv_keeps_full_precision(self, tmp_path):
        """17 significant digits read back to the same doubles"""
        values = np.array([1.0 / 3.0, np.pi, 1e-300, -2.5e17])
        path = write_csv(pd.DataFrame({"x": values}), tmp_path / "nested" / "values.csv")
        raw = path.read_bytes()
        assert b"\r\n" not in raw
        assert raw.startswith(b"x\n")
        np.testing.assert_array_equal(pd.read_csv(path, float_precision="round_trip")["x"].to_numpy(), values)

    def test_json_conversions(self, tmp_path):
        """Complex numbers, arrays, enums and paths become JSON values"""
        path = write_json(
            {"lam": 1 + 2j, "grid": np.arange(3), "group": Group.U, "out": Path("a/b"), "n": np.int64(4)},
            tmp_path / "data.json",
        )
        data = json.loads(path.read_text(encoding="utf-8"))
        assert data == {"lam": [1.0, 2.0], "grid": [0, 1, 2], "group": "U", "out": "a/b", "n": 4}

    def test_svg(self, tmp_path):
        """One polygon per curve"""
        curves = [np.exp(1j * np.linspace(0, 6, 10)), 0.5 * np.exp(1j * np.linspace(0, 6, 10))]
        text = write_svg_polyline(curves, tmp_path / "outline.svg").read_text(encoding="utf-8")
        assert text.count("<polygon") == 2
        assert text.startswith("<svg")

    def test_histogram_outline(self):
        """Steps rise from and return to the baseline"""
        x, y = histogram_outline(np.array([0.0, 1.0, 2.0]), np.array([0.5, 0.25]))
        np.testing.assert_array_equal(x, [0.0, 0.0, 1.0, 1.0, 2.0, 2.0])
        np.testing.assert_array_equal(y, [0.0, 0.5, 0.5, 0.25, 0.25, 0.0])
        with pytest.raises(ValueError):
            histogram_outline(np.array([0.0, 1.0]), np.array([0.5, 0.25]))

    def test_svg_histogram(self, tmp_path):
        """Histogram and reference density become two open polylines"""
        heights, edges = np.histogram(np.linspace(-3.0, 3.0, 200), bins=16, range=(-np.pi, np.pi), density=True)
        reference = (np.linspace(-3.0, 3.0, 50), np.full(50, 1.0 / 6.0))
        path = write_svg_histogram(edges, heights, tmp_path / "angles.svg", reference)
        text = path.read_text(encoding="utf-8")
        assert text.count("<polyline") == 2
        assert "<polygon" not in text
        alone = write_svg_histogram(edges, heights, tmp_path / "alone.svg").read_text(encoding="utf-8")
        assert alone.count("<polyline") == 1
