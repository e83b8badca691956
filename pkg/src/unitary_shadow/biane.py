"""
Connection between the Brown measure of b_t and Biane's measure nu_t.

The holomorphic map f_t(lambda) = lambda exp((t/2)(1 + lambda)/(1 - lambda)) sends the
boundary of Sigma_t into the unit circle. The shadow map Phi_t is constant along
radial segments of Sigma_t and agrees with f_t on the boundary:

    Phi_t(lambda) = exp(i phi(arg lambda)),
    phi(theta) = theta + t r_t sin(theta) / (r_t^2 + 1 - 2 r_t cos(theta)).

Phi_t pushes the Brown measure forward to nu_t, whose density on the arc is
log(r_t(theta)) / (pi t) at phi = phi(theta).
"""

import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import pandas as pd
from numpy.polynomial.legendre import leggauss
from scipy import optimize
from scipy.integrate import cumulative_trapezoid
from scipy.interpolate import PchipInterpolator

from ..density.angular import (
    CDF_NODES,
    angular_cdf_table,
    angular_marginal,
    half_wedge_map,
    phi_derivative,
)
from ..errors import OutOfArcError, OutOfWedgeError, OutsideDomainError, PoleError
from ..region.boundary import RegionBoundary, sample_boundary, theta_grid
from ..region.gobbling import (
    BAND_TOL,
    Membership,
    PolarPoint,
    _check_time,
    chord_squared,
    contains,
    gobbling_time,
    normalize_angle,
    outer_radius,
    theta_max,
)

logger = logging.getLogger(__name__)

INVERSION_TOL = 1e-13
NODES_PER_PANEL = 32
TIP_PANELS = 8


def f_t(t: float, lam: complex) -> complex:
    """f_t(lambda) = lambda exp((t/2)(1 + lambda)/(1 - lambda))."""
    lam = complex(lam)
    if lam == 1:
        raise PoleError("f_t has an essential singularity at lambda = 1")
    return lam * cmath.exp(0.5 * t * (1.0 + lam) / (1.0 - lam))


def log_abs_f_t(t: float, lam: complex) -> float:
    """log|f_t(lambda)| = log|lambda| + (t/2)(1 - |lambda|^2) / |lambda - 1|^2."""
    lam = complex(lam)
    if lam == 1:
        raise PoleError("f_t has an essential singularity at lambda = 1")
    modulus = abs(lam)
    return math.log(modulus) + 0.5 * t * (1.0 - modulus**2) / abs(lam - 1.0) ** 2


def phi_max(t: float) -> float:
    """Half-width of the support arc of nu_t."""
    _check_time(t)
    if t <= 4.0:
        return 0.5 * math.sqrt(t * (4.0 - t)) + math.acos(1.0 - 0.5 * t)
    return math.pi


def _boundary_radius(t: float, theta: float) -> float:
    cutoff = theta_max(t)
    if t <= 4.0 and abs(theta) >= cutoff:
        if abs(theta) > cutoff:
            raise OutOfWedgeError(t, theta, cutoff)
        return 1.0
    return outer_radius(t, theta)


def phi_of_theta(t: float, theta: float) -> float:
    """Continuous lift of arg f_t(r_t(theta) e^{i theta}) on the closed wedge."""
    _check_time(t)
    theta = normalize_angle(theta)
    r = _boundary_radius(t, theta)
    return theta + t * r * math.sin(theta) / chord_squared(r, theta)


def theta_of_phi(t: float, phi: float) -> float:
    """Inverse of phi_of_theta by bracketed search on [0, theta_max]."""
    _check_time(t)
    limit = phi_max(t)
    if t > 4.0:
        phi = normalize_angle(phi)
    if abs(phi) > limit:
        raise OutOfArcError(t, phi, limit)
    target = abs(phi)
    cutoff = theta_max(t)
    if target == 0.0:
        return 0.0
    if target == limit:
        return math.copysign(cutoff, phi)
    theta = optimize.brentq(
        lambda th: phi_of_theta(t, th) - target, 0.0, cutoff, xtol=INVERSION_TOL, rtol=1e-15
    )
    return math.copysign(theta, phi)


def biane_density_forms(t: float, phi: float) -> tuple[float, float, float]:
    """Three equal expressions for the density of nu_t at phi.

    log(r_t) / (pi t), (1/2pi)(r_t^2 - 1)/(r_t^2 + 1 - 2 r_t cos(theta)) and the
    Poisson-kernel form (1/2pi)(1 - |chi|^2)/|1 - chi|^2 at chi = e^{i theta} / r_t.
    """
    theta = theta_of_phi(t, phi)
    r = _boundary_radius(t, theta)
    log_form = math.log(r) / (math.pi * t)
    rational = (r * r - 1.0) / (2.0 * math.pi * chord_squared(r, theta))
    return log_form, rational, kappa_from_chi(chi_boundary(t, theta))


def biane_density(t: float, phi: float) -> float:
    """d nu_t / d phi."""
    return biane_density_forms(t, phi)[0]


def chi_boundary(t: float, theta: float) -> complex:
    """Boundary value chi_t(e^{i phi(theta)}) = e^{i theta} / r_t(theta)."""
    return cmath.exp(1j * theta) / _boundary_radius(t, normalize_angle(theta))


def kappa_from_chi(chi: complex) -> float:
    modulus_sq = abs(chi) ** 2
    gap = abs(1.0 - chi) ** 2
    if gap == 0.0:
        return 0.0
    return (1.0 - modulus_sq) / (2.0 * math.pi * gap)


def kappa(t: float, phi: float) -> float:
    return kappa_from_chi(chi_boundary(t, theta_of_phi(t, phi)))


def shadow_map(t: float, lam: complex, band: float = BAND_TOL) -> complex:
    """Phi_t(lambda) = e^{i phi(arg lambda)} on the closure of Sigma_t."""
    p = PolarPoint.from_complex(lam)
    if contains(t, p, band) is Membership.OUTSIDE:
        raise OutsideDomainError(t, complex(lam), gobbling_time(p))
    cutoff = theta_max(t)
    if t <= 4.0 and abs(p.theta) >= cutoff:
        phi = math.copysign(phi_max(t), p.theta)
    else:
        phi = phi_of_theta(t, p.theta)
    return cmath.exp(1j * phi)


def pushforward_check(t: float, n: int) -> float:
    """max over a theta grid of |a_t(theta) - nu_t(phi(theta)) dphi/dtheta|."""
    worst = 0.0
    for theta in theta_grid(t, n):
        theta = float(theta)
        lhs = angular_marginal(t, theta)
        rhs = biane_density(t, phi_of_theta(t, theta)) * phi_derivative(t, theta)
        worst = max(worst, abs(lhs - rhs))
    logger.debug(f"Pushforward discrepancy at t={t} over {n} angles: {worst:.3e}")
    return worst


def _arc_panels() -> list[tuple[float, float]]:
    edges = [0.0] + [1.0 - 0.5**k for k in range(1, TIP_PANELS + 1)] + [1.0]
    return list(zip(edges[:-1], edges[1:]))


def biane_mass(t: float, nodes: int = NODES_PER_PANEL) -> float:
    """Integral of nu_t over its arc, computed in phi (independently of a_t)."""
    limit = phi_max(t)
    x, wts = leggauss(nodes)
    total = 0.0
    for lo, hi in _arc_panels():
        v = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        if t <= 4.0:
            phi = limit - limit * (1.0 - v) ** 2
            jac = 2.0 * limit * (1.0 - v)
        else:
            phi = limit * v
            jac = np.full_like(v, limit)
        values = np.array([biane_density(t, float(p)) for p in phi])
        total += 0.5 * (hi - lo) * float(np.sum(wts * values * jac))
    return 2.0 * total


def biane_cdf_table(t: float, nodes: int = CDF_NODES) -> tuple[np.ndarray, np.ndarray]:
    """CDF of nu_t on [-phi_max, phi_max], integrated in phi from the nu_t density."""
    cutoff, to_theta, _ = half_wedge_map(t)
    v = np.linspace(0.0, 1.0, nodes + 1)
    theta = to_theta(v)
    theta[-1] = cutoff
    phi = np.array([phi_of_theta(t, float(th)) for th in theta])
    density = np.array([math.log(_boundary_radius(t, float(th))) for th in theta]) / (math.pi * t)
    half = cumulative_trapezoid(density, phi, initial=0.0)
    half /= 2.0 * half[-1]
    angles = np.concatenate([-phi[:0:-1], phi])
    cdf = np.concatenate([0.5 - half[:0:-1], 0.5 + half])
    return angles, cdf


def quantile_consistency(t: float, levels: int = 99, nodes: int = CDF_NODES) -> float:
    """max |phi(theta_p) - phi_p| over evenly spaced probability levels p.

    theta_p is the p-quantile of arg(lambda) under the Brown measure and phi_p the
    p-quantile of nu_t; the pushforward identity makes them correspond.
    """
    angles, cdf = angular_cdf_table(t, nodes)
    phis, nu_cdf = biane_cdf_table(t, nodes)
    theta_quantile = PchipInterpolator(cdf, angles)
    phi_quantile = PchipInterpolator(nu_cdf, phis)
    probabilities = np.arange(1, levels + 1) / (levels + 1)
    worst = 0.0
    for p in probabilities:
        mapped = phi_of_theta(t, float(theta_quantile(p)))
        worst = max(worst, abs(mapped - float(phi_quantile(p))))
    return worst


@dataclass
class ShadowMap:
    """Sampled theta -> phi correspondence along the boundary."""

    t: float
    boundary: RegionBoundary
    phi: np.ndarray
    phi_max: float
    metadata: dict[str, Any] = field(default_factory=dict)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"theta": self.boundary.theta, "phi": self.phi})

    def to_dict(self) -> dict[str, Any]:
        return {"t": self.t, "n": int(self.phi.size), "phi_max": self.phi_max, **self.metadata}


def build_shadow_map(t: float, n: int) -> ShadowMap:
    boundary = sample_boundary(t, n)
    phi = np.array([phi_of_theta(t, float(th)) for th in boundary.theta])
    return ShadowMap(t=t, boundary=boundary, phi=phi, phi_max=phi_max(t))


def biane_table(t: float, n: int) -> pd.DataFrame:
    """nu_t density on n phi values spread over the arc."""
    limit = phi_max(t)
    thetas = theta_grid(t, n)
    phis = np.array([phi_of_theta(t, float(th)) for th in thetas])
    phis = np.clip(phis, -limit, limit)
    density = np.array([biane_density(t, float(p)) for p in phis])
    return pd.DataFrame({"phi": phis, "nu_density": density})
