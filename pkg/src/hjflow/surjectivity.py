"""
The map lambda_0 -> lambda(t) along characteristics that die exactly at time t.

For lambda_0 in Sigma_t there is a unique x_0 = x_0^t(lambda_0) >= 0 with
t_star(lambda_0, x_0) = t. Following the characteristic to its lifetime gives

    lambda_t(lambda_0) = (lambda_0 / |lambda_0|) exp((t/2) (|lambda_0|^2 - 1 + x_0) / (|lambda_0 - 1|^2 + x_0)),

a homeomorphism of the closure of Sigma_t fixing its boundary and every argument.
"""

import cmath
import logging
import math
from functools import lru_cache

from scipy import optimize

from ..errors import ConvergenceError, OutsideDomainError
from ..region.gobbling import (
    BAND_TOL,
    Membership,
    PolarPoint,
    contains,
    gobbling_time,
    outer_radius,
    theta_max,
)

logger = logging.getLogger(__name__)

RADIAL_XTOL = 1e-15


@lru_cache(maxsize=4096)
def _cached_boundary_radius(t: float, theta: float) -> float:
    if t <= 4.0 and abs(theta) >= theta_max(t):
        return 1.0
    return outer_radius(t, theta)


def _require_closure(t: float, p: PolarPoint, band: float) -> Membership:
    where = contains(t, p, band)
    if where is Membership.OUTSIDE:
        raise OutsideDomainError(t, p.to_complex(), gobbling_time(p))
    return where


def x0_for_lifetime(t: float, lambda0: complex, band: float = BAND_TOL) -> float:
    """x_0^t(lambda_0) = |lambda_0| (r_t + 1/r_t) - |lambda_0|^2 - 1, zero on the boundary."""
    p = PolarPoint.from_complex(lambda0)
    _require_closure(t, p, band)
    r_t = _cached_boundary_radius(t, p.theta)
    return max(0.0, p.r * (r_t + 1.0 / r_t) - p.r * p.r - 1.0)


def _log_modulus_at_lifetime(t: float, r0: float, theta: float, r_t: float) -> float:
    x0 = max(0.0, r0 * (r_t + 1.0 / r_t) - r0 * r0 - 1.0)
    gap = (r0 - 1.0) ** 2 + 4.0 * r0 * math.sin(0.5 * theta) ** 2 + x0
    return 0.5 * t * (r0 * r0 - 1.0 + x0) / gap


def lambda_t_map(t: float, lambda0: complex, band: float = BAND_TOL) -> complex:
    p = PolarPoint.from_complex(lambda0)
    _require_closure(t, p, band)
    r_t = _cached_boundary_radius(t, p.theta)
    rho = _log_modulus_at_lifetime(t, p.r, p.theta, r_t)
    return cmath.exp(complex(rho, p.theta))


def inverse_lambda_t(t: float, lam: complex, band: float = BAND_TOL) -> complex:
    """Lambda_0^t(lambda): the unique lambda_0 with lambda_t(lambda_0) = lambda.

    |lambda_t| is increasing along each ray, so the preimage is found by a
    bracketed search in |lambda_0| over [1/r_t, r_t] at the angle of lambda.
    """
    p = PolarPoint.from_complex(lam)
    where = _require_closure(t, p, band)
    if where is Membership.BOUNDARY:
        return complex(lam)
    r_t = _cached_boundary_radius(t, p.theta)
    target = p.rho

    def residual(r0: float) -> float:
        return _log_modulus_at_lifetime(t, r0, p.theta, r_t) - target

    lo, hi = 1.0 / r_t, r_t
    f_lo, f_hi = residual(lo), residual(hi)
    if f_lo >= 0.0:
        return cmath.exp(complex(math.log(lo), p.theta))
    if f_hi <= 0.0:
        return cmath.exp(complex(math.log(hi), p.theta))
    try:
        r0 = optimize.brentq(residual, lo, hi, xtol=RADIAL_XTOL, rtol=1e-15)
    except (ValueError, RuntimeError) as exc:
        raise ConvergenceError(
            f"radial preimage search failed for t={t}, lambda={lam}: {exc}", bracket=(lo, hi)
        ) from exc
    return cmath.exp(complex(math.log(r0), p.theta))
