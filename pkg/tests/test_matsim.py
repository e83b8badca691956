"""
Tests for the matrix Brownian motion sampler and the statistical comparison
"""

import cmath
import math
import sys
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import ConfigError, DomainError, EigenSolverError, EmptyCloudError, SimulationError
from src.matsim import (
    KS_THRESHOLD,
    EigenCloud,
    Group,
    SimConfig,
    TraceMoment,
    compare_to_brown,
    compare_unitary,
    convergence_trend,
    eigenvalues,
    flatness_statistic,
    gobbling_times,
    ks_statistic,
    sample_streams,
    simulate,
    simulate_gl,
    simulate_u,
    trace_moment,
    trend_is_non_increasing,
    unitarity_defect,
)
from src.region import outer_radius


@pytest.fixture
def small_config():
    return SimConfig(N=12, t=0.5, steps=50, seed=11, samples=3)


class TestSimConfig:
    """Validation of simulation parameters"""

    def test_group_from_string(self):
        """Group names are accepted as strings"""
        cfg = SimConfig(N=4, t=1.0, steps=100, group="U")
        assert cfg.group is Group.U
        assert cfg.to_dict()["group"] == "U"
        assert cfg.dt == pytest.approx(0.01)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"N": 1, "t": 1.0, "steps": 100},
            {"N": 4, "t": 2.0, "steps": 10},
            {"N": 4, "t": -1.0, "steps": 100},
            {"N": 4, "t": 1.0, "steps": 100, "samples": 0},
            {"N": 4, "t": 1.0, "steps": 100, "group": "SL"},
        ],
    )
    def test_rejects_bad_values(self, kwargs):
        """Invalid sizes, coarse grids and unknown groups raise ConfigError"""
        with pytest.raises(ConfigError):
            SimConfig(**kwargs)


class TestSampler:
    """GL(N) and U(N) realizations"""

    def test_time_zero_is_identity(self):
        """At t = 0 both processes sit at the identity"""
        cfg = SimConfig(N=5, t=0.0, steps=1)
        np.testing.assert_array_equal(simulate_gl(cfg), np.eye(5))
        np.testing.assert_array_equal(simulate_u(SimConfig(N=5, t=0.0, steps=1, group=Group.U)), np.eye(5))

    def test_seeded_runs_repeat(self, small_config):
        """The same seed reproduces the eigenvalue cloud exactly"""
        first = simulate(small_config)
        second = simulate(small_config)
        np.testing.assert_array_equal(first.eigenvalues, second.eigenvalues)

    def test_thread_count_does_not_matter(self, small_config):
        """Per-sample streams make the cloud independent of the worker count"""
        serial = simulate(small_config, workers=1)
        threaded = simulate(small_config, workers=3)
        np.testing.assert_array_equal(serial.eigenvalues, threaded.eigenvalues)

    def test_seeds_differ(self):
        """Different seeds give different clouds"""
        a = simulate(SimConfig(N=8, t=0.5, steps=50, seed=1))
        b = simulate(SimConfig(N=8, t=0.5, steps=50, seed=2))
        assert not np.allclose(a.eigenvalues, b.eigenvalues)

    def test_streams_are_independent(self):
        """Spawned generators produce distinct draws"""
        first, second = sample_streams(3, 2)
        assert first.standard_normal() != second.standard_normal()

    def test_cloud_size(self, small_config):
        """N eigenvalues per sample"""
        cloud = simulate(small_config)
        assert len(cloud) == small_config.N * small_config.samples
        assert list(cloud.to_frame().columns) == ["re", "im"]
        assert cloud.to_dict()["count"] == len(cloud)
        assert cloud.t == 0.5

    def test_unitary_stays_unitary(self):
        """U(N) samples are unitary and their eigenvalues lie on the circle"""
        cfg = SimConfig(N=16, t=1.0, steps=100, seed=5, group=Group.U)
        u = simulate_u(cfg)
        assert unitarity_defect(u) <= 1e-10
        np.testing.assert_allclose(np.abs(eigenvalues(u)), 1.0, atol=1e-10)

    def test_nan_cloud_rejected(self):
        """An eigenvalue cloud may not contain NaN"""
        with pytest.raises(SimulationError):
            EigenCloud(eigenvalues=np.array([1.0, np.nan]), provenance=SimConfig(N=2, t=0.0, steps=1))


class TestEigenvalues:
    """General complex eigensolver"""

    def test_diagonal(self):
        """Diagonal entries are the eigenvalues"""
        values = eigenvalues(np.diag([1.0, 2.0, 3.0]).astype(complex))
        np.testing.assert_allclose(np.sort(values.real), [1.0, 2.0, 3.0])

    def test_companion_matrix(self):
        """The companion matrix of z^3 - 1 has the cube roots of unity"""
        companion = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)
        values = eigenvalues(companion, verify=True)
        expected = [cmath.exp(2j * math.pi * k / 3) for k in range(3)]
        for root in expected:
            assert np.min(np.abs(values - root)) <= 1e-12

    def test_rejects_bad_input(self):
        """Non-square and non-finite matrices raise"""
        with pytest.raises(EigenSolverError):
            eigenvalues(np.zeros((2, 3)))
        with pytest.raises(EigenSolverError):
            eigenvalues(np.array([[1.0, np.inf], [0.0, 1.0]]))

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_random_matrix_invariants(self, seed):
        """Eigenvalues of a random 8x8 matrix multiply to its determinant and sum to its trace"""
        rng = np.random.default_rng(seed)
        m = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        values = eigenvalues(m, verify=True)
        det = np.linalg.det(m)
        assert abs(np.prod(values) - det) <= 1e-8 * abs(det)
        assert abs(values.sum() - np.trace(m)) <= 1e-10 * np.linalg.norm(m)


class TestStatistics:
    """KS distance, flatness and trend helpers"""

    def test_ks_against_uniform(self):
        """Midpoints of 100 cells are 1/200 away from the uniform CDF"""
        samples = (np.arange(100) + 0.5) / 100
        grid = (np.array([0.0, 1.0]), np.array([0.0, 1.0]))
        assert ks_statistic(samples, grid) == pytest.approx(0.005, abs=1e-12)

    def test_ks_empty(self):
        """KS of no samples raises"""
        with pytest.raises(EmptyCloudError):
            ks_statistic(np.array([]), (np.array([0.0, 1.0]), np.array([0.0, 1.0])))

    def test_gobbling_times(self):
        """T(1) = 0 and T(-1) = 4"""
        np.testing.assert_allclose(gobbling_times(np.array([1.0 + 0j, -1.0 + 0j])), [0.0, 4.0], atol=1e-14)

    def test_flat_cloud(self):
        """Equal counts in every log-radius bin give chi-square zero"""
        theta = 0.3
        log_r = math.log(outer_radius(2.0, theta))
        centres = (np.arange(8) + 0.5) / 4 - 1.0
        eigs = np.repeat(np.exp(centres * log_r + 1j * theta), 10)
        result = flatness_statistic(eigs, 2.0, seed=1)
        assert result.count == 80
        assert result.chi2 == pytest.approx(0.0, abs=1e-12)
        assert result.passed

    def test_lopsided_cloud(self):
        """All mass in one bin fails the flatness band"""
        log_r = math.log(outer_radius(2.0, 0.3))
        eigs = np.full(80, np.exp(0.9 * log_r + 0.3j))
        result = flatness_statistic(eigs, 2.0, seed=1)
        assert result.chi2 == pytest.approx(7 * 80)
        assert not result.passed

    def test_flatness_needs_inside_points(self):
        """A cloud entirely outside Sigma_t raises"""
        with pytest.raises(EmptyCloudError):
            flatness_statistic(np.array([50.0 + 0j]), 2.0)

    def test_trend(self):
        """Means may rise only within the combined standard errors"""
        falling = pd.DataFrame({"N": [10, 20, 40], "mean_ks": [0.2, 0.1, 0.05], "stderr": [0.01, 0.01, 0.01]})
        noisy = pd.DataFrame({"N": [10, 20], "mean_ks": [0.1, 0.12], "stderr": [0.01, 0.01]})
        rising = pd.DataFrame({"N": [10, 20], "mean_ks": [0.1, 0.3], "stderr": [0.01, 0.01]})
        assert trend_is_non_increasing(falling)
        assert trend_is_non_increasing(noisy)
        assert not trend_is_non_increasing(rising)

    def test_convergence_table(self):
        """One row per matrix size with a mean and standard error"""
        frame = convergence_trend(0.5, [4, 8], repetitions=2, seed=3)
        assert list(frame.columns) == ["N", "mean_ks", "stderr"]
        assert frame["N"].tolist() == [4, 8]
        assert (frame["mean_ks"] > 0).all()

    @pytest.mark.slow
    def test_ks_distance_shrinks_with_size(self):
        """At t=2 the arg-KS distance does not grow from N=50 to N=800"""
        frame = convergence_trend(2.0, [50, 200, 800], repetitions=8, seed=7, workers=4)
        assert len(frame) == 3
        assert trend_is_non_increasing(frame, sigmas=3.0)
        assert frame["mean_ks"].iloc[-1] <= frame["mean_ks"].iloc[0]


class TestComparison:
    """Simulated clouds against the computed measures"""

    def test_time_mismatch(self):
        """A cloud is only compared at its own time"""
        cloud = EigenCloud(eigenvalues=np.array([1.0 + 0j, 1.1 + 0j]), provenance=SimConfig(N=2, t=0.5, steps=50))
        with pytest.raises(DomainError):
            compare_to_brown(cloud, 1.0)

    def test_empty_cloud(self):
        """Empty clouds cannot be compared"""
        cloud = EigenCloud(eigenvalues=np.array([], dtype=complex), provenance=SimConfig(N=2, t=0.5, steps=50))
        with pytest.raises(EmptyCloudError):
            compare_unitary(cloud, 0.5)

    @pytest.mark.slow
    def test_gl_matches_brown_measure(self):
        """GL(500) eigenvalues fill Sigma_2 with the computed angular law"""
        cloud = simulate(SimConfig(N=500, t=2.0, steps=500, seed=7, samples=4), workers=4)
        report = compare_to_brown(cloud, 2.0)
        assert report.inside_fraction >= 0.95
        assert report.ks_arg <= KS_THRESHOLD
        assert report.ks_shadow <= KS_THRESHOLD
        assert report.to_dict()["count"] == 2000

    @pytest.mark.slow
    def test_unitary_matches_nu(self):
        """U(256) eigen-angles follow nu_1"""
        cloud = simulate(SimConfig(N=256, t=1.0, steps=256, seed=7, samples=1, group=Group.U))
        assert compare_unitary(cloud, 1.0) <= KS_THRESHOLD

    @pytest.mark.slow
    def test_unitary_matches_nu_at_two(self):
        """U(256) eigen-angles follow nu_2"""
        cloud = simulate(SimConfig(N=256, t=2.0, steps=500, seed=7, samples=4, group=Group.U), workers=4)
        assert compare_unitary(cloud, 2.0) <= KS_THRESHOLD


class TestTraceMoment:
    """E[trace(B B*)] / N of the GL(N) motion"""

    def test_euler_expectation(self):
        """The discretized mean is (1 + dt)^steps"""
        cfg = SimConfig(N=4, t=1.0, steps=1000, samples=2)
        moment = TraceMoment(mean=2.7, stderr=0.01, samples=2)
        assert moment.euler_expectation(cfg) == pytest.approx((1.001) ** 1000, rel=1e-14)
        assert moment.euler_expectation(cfg) == pytest.approx(math.e, abs=2e-3)

    def test_sigmas(self):
        """Distance from a target in standard errors"""
        assert TraceMoment(mean=2.0, stderr=0.5, samples=4).sigmas_from(3.0) == pytest.approx(2.0)
        assert TraceMoment(mean=1.0, stderr=0.0, samples=4).sigmas_from(1.0) == 0.0
        assert math.isinf(TraceMoment(mean=1.0, stderr=0.0, samples=4).sigmas_from(2.0))

    def test_time_zero(self):
        """B_0 = I gives exactly one with no spread"""
        moment = trace_moment(SimConfig(N=6, t=0.0, steps=1, samples=3))
        assert moment.mean == 1.0
        assert moment.stderr == 0.0

    def test_rejects_unitary_and_single_sample(self):
        """Only GL(N) with at least two samples"""
        with pytest.raises(ConfigError):
            trace_moment(SimConfig(N=4, t=0.5, steps=50, samples=2, group=Group.U))
        with pytest.raises(ConfigError):
            trace_moment(SimConfig(N=4, t=0.5, steps=50, samples=1))

    def test_thread_count_does_not_matter(self):
        """Per-sample streams make the estimate independent of workers"""
        cfg = SimConfig(N=6, t=0.5, steps=50, seed=5, samples=4)
        assert trace_moment(cfg, workers=1) == trace_moment(cfg, workers=3)

    @pytest.mark.slow
    def test_converges_to_exponential(self):
        """GL(64) at t=1 over 100 samples: trace(B B*)/N within 3 standard errors of e"""
        cfg = SimConfig(N=64, t=1.0, steps=1000, seed=7, samples=100)
        moment = trace_moment(cfg, workers=4)
        assert moment.samples == 100
        assert moment.sigmas_from(math.e) <= 3.0
        assert moment.sigmas_from(moment.euler_expectation(cfg)) <= 3.0
