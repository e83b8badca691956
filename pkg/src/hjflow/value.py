"""
Values of S(t, lambda, x) = tau[log((b_t - lambda)^*(b_t - lambda) + x)] from characteristics.

Along a characteristic with initial data (lambda_0, x_0),

    S(t, lambda(t), x(t)) = log(|lambda_0 - 1|^2 + x_0) - x_0 t / (|lambda_0 - 1|^2 + x_0)^2
                            + log|lambda(t)| - log|lambda_0|.

s_t(lambda) is the x -> 0 limit. Outside the closed domain it is log|lambda - 1|^2;
inside it is read off the characteristic that dies exactly at time t.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize

from ..density.angular import boundary_slope
from ..errors import BlowupError, ChartInversionError, DomainError
from ..region.gobbling import BAND_TOL, Membership, PolarPoint, contains, chord_squared
from .closed_form import (
    log_lambda_at_lifetime,
    log_lambda_closed_form,
    q_analytic,
    t_star_from,
    z_closed_form,
)
from .hamiltonian import HJConstants
from .surjectivity import inverse_lambda_t, x0_for_lifetime

logger = logging.getLogger(__name__)

LIFETIME_RTOL = 1e-12
CHART_XTOL = 1e-14
CHART_RESIDUAL_TOL = 1e-10
_MAX_DOUBLINGS = 200


def _initial_terms(c: HJConstants, t: float) -> float:
    return -math.log(c.p0) - c.x0 * t * c.p0 * c.p0 - math.log(c.r0)


def hj_value_S(t: float, lambda0: complex, x0: float) -> float:
    """S at time t along the characteristic from (lambda0, x0).

    For t below the lifetime log|lambda(t)| comes from the closed form; at the
    lifetime it is C t_star / 2.
    """
    c = HJConstants.from_initial(lambda0, x0)
    if t < 0.0:
        raise DomainError(f"time must be non-negative, got t={t!r}")
    lifetime = t_star_from(c)
    if abs(t - lifetime) <= LIFETIME_RTOL * lifetime:
        log_lambda = log_lambda_at_lifetime(lambda0, x0)
    elif t > lifetime:
        raise BlowupError(t, lifetime)
    else:
        log_lambda = log_lambda_closed_form(c, t)
    return _initial_terms(c, t) + log_lambda


def hj_value_at_lifetime(lambda0: complex, x0: float) -> tuple[float, float]:
    """(t_star, S(t_star)) for the characteristic from (lambda0, x0)."""
    c = HJConstants.from_initial(lambda0, x0)
    lifetime = t_star_from(c)
    return lifetime, _initial_terms(c, lifetime) + 0.5 * c.C * lifetime


def s_t(t: float, lam: complex, band: float = BAND_TOL) -> float:
    """x -> 0 limit of S(t, lambda, x).

    On the boundary the common limit log|lambda - 1|^2 is returned.
    """
    p = PolarPoint.from_complex(lam)
    if contains(t, p, band) is not Membership.INSIDE:
        return math.log(chord_squared(p.r, p.theta))
    lambda0 = inverse_lambda_t(t, lam, band)
    x0 = x0_for_lifetime(t, lambda0, band)
    c = HJConstants.from_initial(lambda0, x0)
    return _initial_terms(c, t) + p.rho


def s_theta_derivative(t: float, theta: float) -> float:
    """d s_t / d theta inside Sigma_t: 2 r_t sin(theta) / |r_t e^{i theta} - 1|^2, independent of rho."""
    return boundary_slope(t, theta)


def outside_theta_derivative(lam: complex) -> float:
    """d/d theta of log|lambda - 1|^2."""
    p = PolarPoint.from_complex(lam)
    return 2.0 * p.r * math.sin(p.theta) / chord_squared(p.r, p.theta)


def outside_radial_derivative(lam: complex) -> float:
    """d/d rho of log|lambda - 1|^2, rho = log|lambda|."""
    p = PolarPoint.from_complex(lam)
    return 2.0 * p.r * (p.r - math.cos(p.theta)) / chord_squared(p.r, p.theta)


def s_radial_derivative(t: float, rho: float) -> float:
    """d s_t / d rho inside Sigma_t."""
    return 2.0 * rho / t + 1.0


@dataclass(frozen=True)
class ChartPoint:
    """Initial data (lambda0, x0) whose characteristic passes through (lambda, x) at time t."""

    t: float
    lam: complex
    x: float
    lambda0: complex
    x0: float
    S: float
    p_x: float


def _chart(t: float, theta: float, log_r0: float, log_x0: float) -> tuple[float, float]:
    r0 = math.exp(log_r0)
    c = HJConstants.from_initial(r0 * complex(math.cos(theta), math.sin(theta)), math.exp(log_x0))
    return log_lambda_closed_form(c, t), z_closed_form(c, t)


def _seed_x0(t: float, theta: float, r0: float, lower: float, sqrt_x: float) -> float:
    """Bracketed solve of z(t) = sqrt(x) in x0 at fixed |lambda_0|."""
    lam0 = r0 * complex(math.cos(theta), math.sin(theta))

    def residual(x0: float) -> float:
        return z_closed_form(HJConstants.from_initial(lam0, x0), t) - sqrt_x

    hi = max(2.0 * lower, lower + sqrt_x * sqrt_x, 1e-6)
    for _ in range(_MAX_DOUBLINGS):
        if residual(hi) > 0.0:
            break
        hi *= 2.0
    else:
        raise ChartInversionError(f"could not bracket x0 for t={t}, r0={r0}", bracket=(lower, hi))
    return optimize.brentq(residual, lower, hi, xtol=1e-15, rtol=1e-15)


def chart_point(t: float, lam: complex, x: float, band: float = BAND_TOL) -> ChartPoint:
    """Invert (lambda0, x0) -> (lambda(t), sqrt(x(t))) at fixed arg(lambda).

    A one-dimensional bracketed solve in x0 seeds a MINPACK hybrid solve in
    (log|lambda0|, log x0).
    """
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"x must be positive, got x={x!r}")
    if t <= 0.0:
        raise DomainError(f"time must be positive, got t={t!r}")
    p = PolarPoint.from_complex(lam)
    sqrt_x = math.sqrt(x)
    if contains(t, p, band) is Membership.INSIDE:
        lambda0 = inverse_lambda_t(t, lam, band)
        r0 = abs(lambda0)
        lower = x0_for_lifetime(t, lambda0, band)
    else:
        r0 = p.r
        lower = 0.0
    x0_seed = _seed_x0(t, p.theta, r0, lower, sqrt_x)
    guess = np.array([math.log(r0), math.log(max(x0_seed, 1e-300))])

    def equations(v: np.ndarray) -> np.ndarray:
        try:
            rho, z = _chart(t, p.theta, float(v[0]), float(v[1]))
        except (DomainError, OverflowError, ZeroDivisionError):
            return np.array([1e3, 1e3])
        return np.array([rho - p.rho, z - sqrt_x])

    solution = optimize.root(equations, guess, method="hybr", options={"xtol": CHART_XTOL})
    residual = float(np.max(np.abs(equations(solution.x))))
    if residual > CHART_RESIDUAL_TOL:
        logger.debug(f"Chart solve at t={t}, lambda={lam}, x={x}: {solution.message}")
        raise ChartInversionError(
            f"chart inversion residual {residual:.3e} at t={t}, lambda={lam}, x={x}",
            iterate=solution.x,
        )
    r0, x0 = math.exp(solution.x[0]), math.exp(solution.x[1])
    lambda0 = r0 * complex(math.cos(p.theta), math.sin(p.theta))
    c = HJConstants.from_initial(lambda0, x0)
    if t >= t_star_from(c):
        raise ChartInversionError(f"chart solution at t={t} lies past its lifetime", iterate=solution.x)
    return ChartPoint(
        t=t,
        lam=complex(lam),
        x=x,
        lambda0=lambda0,
        x0=x0,
        S=_initial_terms(c, t) + p.rho,
        p_x=1.0 / q_analytic(c, t),
    )


def S_value(t: float, lam: complex, x: float) -> float:
    """S(t, lambda, x) for x > 0 through the characteristic chart."""
    return chart_point(t, lam, x).S


def pde_residual(t: float, lam: complex, x: float, h: float = 1e-3) -> float:
    """|S_t - x S_x (1 + |lambda|^2 S_x - x S_x - a S_a - b S_b)| by central differences."""
    if x - h <= 0.0 or t - h <= 0.0:
        raise DomainError(f"stencil of width h={h} leaves the chart domain at t={t}, x={x}")
    lam = complex(lam)
    a, b = lam.real, lam.imag
    s_t_dt = (S_value(t + h, lam, x) - S_value(t - h, lam, x)) / (2.0 * h)
    s_x = (S_value(t, lam, x + h) - S_value(t, lam, x - h)) / (2.0 * h)
    s_a = (S_value(t, lam + h, x) - S_value(t, lam - h, x)) / (2.0 * h)
    s_b = (S_value(t, lam + 1j * h, x) - S_value(t, lam - 1j * h, x)) / (2.0 * h)
    bracket = 1.0 + (a * a + b * b) * s_x - x * s_x - a * s_a - b * s_b
    return abs(s_t_dt - x * s_x * bracket)


def pde_residual_order(t: float, lam: complex, x: float, h: float = 1e-3) -> tuple[float, float, Optional[float]]:
    """Residuals at h and h/2 and their ratio (about 4 for second-order differences)."""
    coarse = pde_residual(t, lam, x, h)
    fine = pde_residual(t, lam, x, 0.5 * h)
    ratio = coarse / fine if fine > 0.0 else None
    return coarse, fine, ratio
