"""
Tests for the gobbling time and the domain Sigma_t
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import DomainError, OutOfWedgeError
from src.region import (
    Membership,
    PolarPoint,
    annulus_estimate,
    contains,
    disk_estimate,
    gobbling_time,
    gobbling_time_at,
    gobbling_time_dr_at,
    inner_radius,
    log_coordinates,
    outer_radius,
    sample_boundary,
    theta_grid,
    theta_max,
)
from src.region.gobbling import gobbling_time_dtheta_at, in_wedge, log_ratio, normalize_angle


class TestGobblingTime:
    """Closed-form values and derivatives of T"""

    def test_anchor_values(self):
        """T vanishes at 1, equals 4 at -1 and matches direct substitution elsewhere"""
        assert gobbling_time(PolarPoint(1.0, 0.0)) == 0.0
        assert gobbling_time(PolarPoint(1.0, math.pi)) == pytest.approx(4.0, abs=1e-15)
        e = math.e
        assert gobbling_time_at(e, 0.0) == pytest.approx(2 * (e - 1) / (e + 1), rel=1e-14)
        assert gobbling_time_at(2.0, 0.5 * math.pi) == pytest.approx(5 * math.log(4) / 3, rel=1e-14)

    def test_unit_circle_minimum(self):
        """On |lambda| = 1 the gobbling time is 2 - 2 cos(theta)"""
        for theta in np.linspace(-3.0, 3.0, 13):
            assert gobbling_time_at(1.0, theta) == pytest.approx(2 - 2 * math.cos(theta), abs=1e-14)

    def test_log_ratio_continuous_through_one(self):
        """log(r^2)/(r^2 - 1) is continuous across the series band"""
        for r in (1.0 - 2e-4, 1.0 - 5e-5, 1.0, 1.0 + 5e-5, 1.0 + 2e-4):
            exact = 1.0 if r == 1.0 else math.log1p((r - 1) * (r + 1)) / ((r - 1) * (r + 1))
            assert log_ratio(r) == pytest.approx(exact, rel=1e-12)

    def test_inversion_symmetry(self):
        """T(1/r, -theta) = T(r, theta) and T is even in theta over a log-uniform radius grid"""
        radii = np.geomspace(0.05, 20.0, 81)
        angles = np.linspace(-math.pi, math.pi, 64, endpoint=False)
        for r in radii:
            for theta in angles:
                value = gobbling_time_at(r, theta)
                assert abs(gobbling_time_at(1.0 / r, -theta) - value) <= 1e-12 * (1.0 + value)
                assert abs(gobbling_time_at(r, -theta) - value) <= 1e-12 * (1.0 + value)

    @pytest.mark.parametrize("theta", [0.0, 0.5, 1.5, 2.5, math.pi])
    def test_monotone_in_radius(self, theta):
        """T strictly decreases on (0, 1) and strictly increases beyond 1"""
        outside = np.array([gobbling_time_at(r, theta) for r in np.geomspace(1.01, 20.0, 60)])
        inside = np.array([gobbling_time_at(r, theta) for r in np.geomspace(0.05, 0.99, 60)])
        assert np.all(np.diff(outside) > 0.0)
        assert np.all(np.diff(inside) < 0.0)

    def test_radial_derivative_matches_finite_difference(self):
        """Closed-form dT/dr agrees with a central difference, also near r = 1"""
        h = 1e-6
        for r, theta in [(0.5, 0.3), (1.0, 1.0), (1.0 + 1e-3, 2.0), (3.0, -0.7)]:
            fd = (gobbling_time_at(r + h, theta) - gobbling_time_at(r - h, theta)) / (2 * h)
            assert gobbling_time_dr_at(r, theta) == pytest.approx(fd, rel=1e-6, abs=1e-8)

    def test_angular_derivative_matches_finite_difference(self):
        """dT/dtheta agrees with a central difference"""
        h = 1e-6
        r, theta = 1.7, 0.9
        fd = (gobbling_time_at(r, theta + h) - gobbling_time_at(r, theta - h)) / (2 * h)
        assert gobbling_time_dtheta_at(r, theta) == pytest.approx(fd, rel=1e-7)

    def test_rejects_nonpositive_radius(self):
        """r <= 0 is a domain error"""
        with pytest.raises(DomainError):
            gobbling_time_at(0.0, 0.0)
        with pytest.raises(DomainError):
            PolarPoint.from_complex(0j)


class TestWedge:
    """Angular range of Sigma_t"""

    def test_theta_max_values(self):
        """theta_max is arccos(1 - t/2) up to t = 4 and pi beyond"""
        assert theta_max(2.0) == pytest.approx(0.5 * math.pi, abs=1e-15)
        assert theta_max(4.0) == pytest.approx(math.pi, abs=1e-15)
        assert theta_max(5.0) == math.pi

    def test_in_wedge(self):
        """Angles beyond theta_max are excluded for t <= 4 only"""
        assert in_wedge(2.0, 1.0)
        assert not in_wedge(2.0, 1.7)
        assert in_wedge(4.5, math.pi)

    def test_normalize_angle(self):
        """Angles fold into (-pi, pi]"""
        assert normalize_angle(-math.pi) == math.pi
        assert normalize_angle(2 * math.pi + 0.25) == pytest.approx(0.25, abs=1e-15)
        assert normalize_angle(0.25) == 0.25

    def test_rejects_nonpositive_time(self):
        """t must be positive"""
        with pytest.raises(DomainError):
            theta_max(0.0)


class TestOuterRadius:
    """Root finding for r_t(theta)"""

    def test_inverts_gobbling_time(self):
        """r_t at theta = 0 for t = T(e, 0) is e"""
        t = 2 * (math.e - 1) / (math.e + 1)
        assert outer_radius(t, 0.0) == pytest.approx(math.e, rel=1e-12)

    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0, 4.0, 7.0])
    def test_residual_on_grid(self, t):
        """T(r_t(theta), theta) = t on a grid of angles"""
        for theta in theta_grid(t, 33):
            r = outer_radius(t, float(theta))
            assert r >= 1.0
            assert gobbling_time_at(r, float(theta)) == pytest.approx(t, abs=1e-12 * max(1.0, t))

    def test_inner_radius_is_reciprocal(self):
        """The companion root is 1 / r_t"""
        r = outer_radius(2.0, 0.3)
        assert inner_radius(2.0, 0.3) == pytest.approx(1.0 / r, rel=1e-15)
        assert gobbling_time_at(1.0 / r, 0.3) == pytest.approx(2.0, abs=1e-11)

    @pytest.mark.parametrize("t", [1.0, 2.0, 3.0, 3.9])
    def test_continuity_at_cutoff(self, t):
        """r_t tends to 1 at the edge of the wedge"""
        assert outer_radius(t, theta_max(t) - 1e-4) < 1.1

    def test_out_of_wedge(self):
        """Angles outside the wedge raise with the wedge recorded"""
        with pytest.raises(OutOfWedgeError) as info:
            outer_radius(2.0, 2.0)
        assert info.value.theta_max == pytest.approx(0.5 * math.pi)
        assert info.value.t == 2.0

    def test_t_four_closes_at_minus_one(self):
        """At t = 4 the ray toward -1 meets the boundary at the unit circle"""
        assert outer_radius(4.0, math.pi - 1e-6) == pytest.approx(1.0, abs=1e-3)


class TestContains:
    """Membership classification"""

    def test_examples(self):
        """1 is inside every Sigma_t, -1 is on the boundary of Sigma_4, 0.01 is outside Sigma_3"""
        assert contains(1.0, PolarPoint(1.0, 0.0)) is Membership.INSIDE
        assert contains(4.0, PolarPoint(1.0, math.pi)) is Membership.BOUNDARY
        assert contains(3.0, PolarPoint.from_complex(0.01)) is Membership.OUTSIDE

    def test_log_coordinates(self):
        """rho = log r and theta are returned unchanged"""
        rho, theta = log_coordinates(PolarPoint(math.e, 0.5))
        assert rho == pytest.approx(1.0)
        assert theta == 0.5


class TestBoundarySampling:
    """Tabulated boundary of Sigma_t"""

    def test_full_circle_beyond_four(self):
        """t > 4 covers angles across (-pi, pi)"""
        boundary = sample_boundary(4.1, 64)
        assert boundary.theta.size == 64
        assert boundary.theta.min() > -math.pi
        assert boundary.theta.max() < math.pi
        assert boundary.theta.max() > 3.0
        assert boundary.cutoff_radius is None

    def test_symmetric_samples(self):
        """r at theta and -theta agree"""
        boundary = sample_boundary(2.0, 33)
        np.testing.assert_allclose(boundary.theta, -boundary.theta[::-1], atol=1e-15)
        np.testing.assert_allclose(boundary.r_outer, boundary.r_outer[::-1], rtol=1e-12)
        assert boundary.residuals().max() < 1e-11

    @pytest.mark.parametrize("t, n", [(1.0, 33), (2.0, 64), (3.9, 40), (4.1, 64), (7.0, 128)])
    def test_monotone_halves(self, t, n):
        """Angles increase and r_t shrinks as |theta| grows on each half"""
        boundary = sample_boundary(t, n)
        assert np.all(np.diff(boundary.theta) > 0.0)
        upper = boundary.r_outer[boundary.theta >= 0.0]
        lower = boundary.r_outer[boundary.theta <= 0.0]
        assert np.all(np.diff(upper) <= 1e-10)
        assert np.all(np.diff(lower) >= -1e-10)
        assert upper[-1] < upper[0]

    def test_large_t_annulus(self):
        """At t = 7 the inner radius is close to e^{-t/2} in log-radius"""
        boundary = sample_boundary(7.0, 128)
        inner, outer = annulus_estimate(7.0)
        assert math.log(boundary.r_inner.min()) == pytest.approx(math.log(inner), rel=0.1)
        assert math.log(boundary.r_outer.max()) == pytest.approx(math.log(outer), rel=0.1)

    def test_small_t_disk(self):
        """For small t the domain is close to the disk of radius sqrt(t) about 1"""
        t = 0.01
        centre, radius = disk_estimate(t)
        boundary = sample_boundary(t, 32)
        distances = np.abs(np.concatenate(boundary.outline()) - centre)
        np.testing.assert_allclose(distances, radius, rtol=0.1)

    def test_frame_columns(self):
        """CSV frame carries theta, r_outer, r_inner"""
        frame = sample_boundary(1.0, 16).to_frame()
        assert list(frame.columns) == ["theta", "r_outer", "r_inner"]
        assert len(frame) == 16

    def test_minimum_size(self):
        """Fewer than 16 samples is rejected"""
        with pytest.raises(DomainError):
            sample_boundary(2.0, 8)
