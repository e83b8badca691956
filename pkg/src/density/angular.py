"""
Brown measure density of free multiplicative Brownian motion.

Inside Sigma_t the density in polar coordinates is W_t(r, theta) = w_t(theta) / r^2,
so the radial profile is fixed and all information sits in the angular factor
w_t. Three independent evaluations of w_t are provided:

- ``omega``: omega(r_t(theta), theta) / (2 pi t), closed form, canonical
- ``theta_derivative``: (1 / 4 pi) (2 / t + d/dtheta m_t(theta)) with
  m_t(theta) = 2 r_t sin(theta) / (r_t^2 + 1 - 2 r_t cos(theta)), differenced
  along the boundary
- ``phi_jacobian``: (1 / 2 pi t) dphi/dtheta, with phi(theta) differentiated
  implicitly through T(r_t(theta), theta) = t
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Optional

import numpy as np
import pandas as pd
from numpy.polynomial.legendre import leggauss
from scipy.integrate import cumulative_trapezoid

from ..errors import DomainError, OutOfWedgeError, QuadratureError
from ..region.gobbling import (
    BAND_TOL,
    ROOT_TOL,
    Membership,
    PolarPoint,
    _check_time,
    chord_squared,
    contains,
    gobbling_time_dr_at,
    gobbling_time_dtheta_at,
    normalize_angle,
    outer_radius,
    theta_max,
)
from ..region.boundary import theta_grid
from .omega import omega, omega_on_unit_circle

logger = logging.getLogger(__name__)

CROSS_CHECK_TOL = 1e-6
DTHETA_SCALE = 1e-5
NODES_PER_PANEL = 64
TIP_PANELS = 8
CDF_NODES = 4096


class DensityRoute(str, Enum):
    """Formula used to evaluate w_t(theta)."""

    OMEGA = "omega"
    THETA_DERIVATIVE = "theta_derivative"
    PHI_JACOBIAN = "phi_jacobian"


def _wedge_theta(t: float, theta: float) -> float:
    theta = normalize_angle(theta)
    cutoff = theta_max(t)
    if t <= 4.0 and abs(theta) >= cutoff:
        raise OutOfWedgeError(t, theta, cutoff)
    return theta


def boundary_slope(t: float, theta: float) -> float:
    """m_t(theta) = 2 r_t sin(theta) / |r_t e^{i theta} - 1|^2."""
    r = outer_radius(t, theta)
    return 2.0 * r * math.sin(theta) / chord_squared(r, theta)


def phi_derivative(t: float, theta: float) -> float:
    """dphi/dtheta for phi = theta + t r_t sin(theta) / |r_t e^{i theta} - 1|^2."""
    theta = _wedge_theta(t, theta)
    r = outer_radius(t, theta)
    chord = chord_squared(r, theta)
    sin_t, cos_t = math.sin(theta), math.cos(theta)
    g_r = sin_t * (1.0 - r * r) / chord**2
    g_theta = r * ((r * r + 1.0) * cos_t - 2.0 * r) / chord**2
    t_r = gobbling_time_dr_at(r, theta)
    t_theta = gobbling_time_dtheta_at(r, theta)
    dr_dtheta = -t_theta / t_r if t_r > 0.0 else 0.0
    return 1.0 + t * (g_r * dr_dtheta + g_theta)


def _central_difference(func: Callable[[float], float], x: float, step: float) -> float:
    """Five-point central difference."""
    return (
        -func(x + 2.0 * step) + 8.0 * func(x + step) - 8.0 * func(x - step) + func(x - 2.0 * step)
    ) / (12.0 * step)


def _derivative_step(t: float, theta: float) -> float:
    cutoff = theta_max(t)
    step = DTHETA_SCALE * cutoff
    if t <= 4.0:
        # keep the stencil inside the open wedge
        step = min(step, (cutoff - abs(theta)) / 3.0)
    return step


def w_of_theta(
    t: float, theta: float, route: DensityRoute | str = DensityRoute.OMEGA
) -> float:
    """Angular factor w_t(theta) of the Brown density."""
    _check_time(t)
    theta = _wedge_theta(t, theta)
    route = DensityRoute(route)
    if route is DensityRoute.OMEGA:
        return omega(outer_radius(t, theta), theta) / (2.0 * math.pi * t)
    if route is DensityRoute.THETA_DERIVATIVE:
        step = _derivative_step(t, theta)
        slope = _central_difference(lambda th: boundary_slope(t, th), theta, step)
        return (2.0 / t + slope) / (4.0 * math.pi)
    return phi_derivative(t, theta) / (2.0 * math.pi * t)


def w_tip_limit(t: float) -> float:
    """Limit of w_t(theta) as theta -> +/- theta_max; positive for t < 4, zero at t = 4."""
    _check_time(t)
    if t > 4.0:
        raise DomainError(f"Sigma_t has no angular cutoff for t={t} > 4")
    return omega_on_unit_circle(theta_max(t)) / (2.0 * math.pi * t)


@dataclass(frozen=True)
class DensitySample:
    """Value of W_t at a point, with its classification."""

    value: float
    membership: Membership


def brown_density_sample(t: float, p: PolarPoint, band: float = BAND_TOL) -> DensitySample:
    """W_t(r, theta) = w_t(theta) / r^2 inside; the inside limit on the boundary."""
    where = contains(t, p, band)
    if where is Membership.OUTSIDE:
        return DensitySample(0.0, where)
    if t <= 4.0 and abs(p.theta) >= theta_max(t):
        # only the tips e^{+/- i theta_max} reach here
        return DensitySample(w_tip_limit(t) / p.r**2, where)
    return DensitySample(w_of_theta(t, p.theta) / p.r**2, where)


def brown_density(t: float, p: PolarPoint, band: float = BAND_TOL) -> float:
    return brown_density_sample(t, p, band).value


def angular_marginal(t: float, theta: float) -> float:
    """a_t(theta) = 2 log(r_t(theta)) w_t(theta), the density of arg(lambda)."""
    _check_time(t)
    theta = normalize_angle(theta)
    cutoff = theta_max(t)
    if t <= 4.0 and abs(theta) >= cutoff:
        if abs(theta) == cutoff:
            return 0.0
        raise OutOfWedgeError(t, theta, cutoff)
    r = outer_radius(t, theta)
    return 2.0 * math.log(r) * omega(r, theta) / (2.0 * math.pi * t)


def radial_profile_mass(t: float, theta: float) -> tuple[float, float]:
    """Mass of W_t r dr along the ray at theta, split at the unit circle.

    Both halves equal log(r_t) w_t(theta); their sum is a_t(theta).
    """
    r = outer_radius(t, theta)
    w = w_of_theta(t, theta)
    inner = -w * math.log(1.0 / r)
    outer = w * math.log(r)
    return inner, outer


def _tip_panels(levels: int) -> list[tuple[float, float]]:
    edges = [0.0] + [1.0 - 0.5**k for k in range(1, levels + 1)] + [1.0]
    return list(zip(edges[:-1], edges[1:]))


def half_wedge_map(t: float) -> tuple[float, Callable[[np.ndarray], np.ndarray], Callable[[np.ndarray], np.ndarray]]:
    """Change of variables v in [0, 1] -> theta in [0, theta_max].

    For t <= 4 the boundary closes like a square root at the tip, so
    theta = theta_max v (2 - v) is used; otherwise theta = pi v.
    """
    cutoff = theta_max(t)
    if t <= 4.0:
        return (
            cutoff,
            lambda v: cutoff - cutoff * (1.0 - v) ** 2,
            lambda v: 2.0 * cutoff * (1.0 - v),
        )
    return cutoff, lambda v: cutoff * v, lambda v: np.full_like(v, cutoff)


def wedge_integral(
    t: float, integrand: Callable[[float], float], nodes: int = NODES_PER_PANEL
) -> float:
    """Integral of an even function of theta over the wedge, by composite Gauss-Legendre."""
    _check_time(t)
    _, to_theta, jacobian = half_wedge_map(t)
    panels = _tip_panels(TIP_PANELS) if t <= 4.0 else _tip_panels(2)
    x, wts = leggauss(nodes)
    total = 0.0
    for lo, hi in panels:
        v = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        theta = to_theta(v)
        values = np.array([integrand(float(th)) for th in theta])
        total += 0.5 * (hi - lo) * float(np.sum(wts * values * jacobian(v)))
    return 2.0 * total


def total_mass(t: float, n: int = NODES_PER_PANEL) -> float:
    """Integral of a_t over the wedge; equals 1 for a probability measure."""
    if n < 2:
        raise DomainError(f"need at least 2 quadrature nodes per panel, got {n}")
    fine = wedge_integral(t, lambda th: angular_marginal(t, th), n)
    coarse = wedge_integral(t, lambda th: angular_marginal(t, th), max(2, n // 2))
    if not math.isfinite(fine):
        raise QuadratureError(f"non-finite mass at t={t}", nodes=n, estimate=fine)
    if abs(fine - coarse) > 1e-8:
        logger.warning(
            f"⚠️  Mass quadrature at t={t}: {n} and {n // 2} node rules differ by {abs(fine - coarse):.2e}"
        )
    return fine


def angular_cdf_table(t: float, nodes: int = CDF_NODES) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative distribution of arg(lambda) under the Brown measure.

    Returns increasing angles on [-theta_max, theta_max] and the CDF values,
    normalized to end at exactly 1.
    """
    cutoff, to_theta, jacobian = half_wedge_map(t)
    v = np.linspace(0.0, 1.0, nodes + 1)
    theta = to_theta(v)
    theta[-1] = cutoff
    values = np.array([angular_marginal(t, float(th)) for th in theta]) * jacobian(v)
    half = cumulative_trapezoid(values, v, initial=0.0)
    half /= 2.0 * half[-1]
    angles = np.concatenate([-theta[:0:-1], theta])
    cdf = np.concatenate([0.5 - half[:0:-1], 0.5 + half])
    return angles, cdf


@dataclass
class DensityGrid:
    """Tabulated (theta, r_t, w_t, a_t) rows at fixed t."""

    t: float
    route: DensityRoute
    theta: np.ndarray
    r_t: np.ndarray
    w_t: np.ndarray
    a_t: np.ndarray
    tol: float = ROOT_TOL
    mass: Optional[float] = None
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.theta.size)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"theta": self.theta, "r_t": self.r_t, "w_t": self.w_t, "a_t": self.a_t})

    def to_dict(self) -> dict[str, Any]:
        return {
            "t": self.t,
            "n": self.n,
            "route": self.route.value,
            "tol": self.tol,
            "mass": self.mass,
            **self.metadata,
        }


def tabulate_density(
    t: float, n: int, route: DensityRoute | str = DensityRoute.OMEGA, with_mass: bool = True
) -> DensityGrid:
    route = DensityRoute(route)
    grid = theta_grid(t, n)
    radii = np.array([outer_radius(t, float(th)) for th in grid])
    w = np.array([w_of_theta(t, float(th), route) for th in grid])
    a = 2.0 * np.log(radii) * w
    mass = total_mass(t) if with_mass else None
    logger.info(f"📊 Tabulated w_t at t={t} on {n} angles via {route.value}")
    return DensityGrid(t=t, route=route, theta=grid, r_t=radii, w_t=w, a_t=a, mass=mass)


def route_discrepancy(t: float, thetas: np.ndarray) -> float:
    """Largest pairwise difference between the three w_t routes on a grid."""
    worst = 0.0
    for theta in thetas:
        values = [w_of_theta(t, float(theta), route) for route in DensityRoute]
        worst = max(worst, max(values) - min(values))
    return worst
