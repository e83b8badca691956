"""
Gobbling time T(lambda) and the geometry of the domain Sigma_t.

A point lambda = r e^{i theta} belongs to Sigma_t exactly when T(lambda) < t, where

    T(r, theta) = (r^2 + 1 - 2 r cos(theta)) * log(r^2) / (r^2 - 1).

For fixed theta, T is strictly decreasing on 0 < r < 1 and strictly increasing on
r > 1, with minimum 2 - 2 cos(theta) at r = 1. The ray at angle theta therefore
meets the boundary in two radii r_t(theta) and 1 / r_t(theta).
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

from scipy import optimize

from ..errors import ConvergenceError, DomainError, OutOfWedgeError

logger = logging.getLogger(__name__)

ROOT_TOL = 1e-12
BAND_TOL = 1e-9
BRACKET_WIDTH = 1e-8
TAYLOR_BAND = 1e-4
NEWTON_STEPS = 5
_SERIES_BAND = 0.5
_MAX_BRACKET_DOUBLINGS = 2000


def normalize_angle(theta: float) -> float:
    """Map an angle into (-pi, pi]."""
    theta = math.remainder(theta, 2.0 * math.pi)
    if theta <= -math.pi:
        theta = math.pi
    return theta


@dataclass(frozen=True)
class PolarPoint:
    """A nonzero complex number lambda = r e^{i theta}."""

    r: float
    theta: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.r) or self.r <= 0.0:
            raise DomainError(f"radius must be positive and finite, got r={self.r!r}")
        object.__setattr__(self, "theta", normalize_angle(float(self.theta)))

    @classmethod
    def from_complex(cls, z: complex) -> "PolarPoint":
        z = complex(z)
        if z == 0:
            raise DomainError("lambda = 0 has no polar representation")
        return cls(abs(z), math.atan2(z.imag, z.real))

    @property
    def rho(self) -> float:
        """Logarithmic radius log r."""
        return math.log(self.r)

    @property
    def a(self) -> float:
        return self.r * math.cos(self.theta)

    @property
    def b(self) -> float:
        return self.r * math.sin(self.theta)

    def to_complex(self) -> complex:
        return complex(self.a, self.b)


class Membership(Enum):
    """Position of a point relative to Sigma_t."""

    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def _check_time(t: float) -> None:
    if not math.isfinite(t) or t <= 0.0:
        raise DomainError(f"time parameter must be positive, got t={t!r}")


def _check_radius(r: float) -> None:
    if not math.isfinite(r) or r <= 0.0:
        raise DomainError(f"radius must be positive, got r={r!r}")


def log_ratio(r: float) -> float:
    """log(r^2) / (r^2 - 1), continuous through r = 1 where it equals 1."""
    u = (r - 1.0) * (r + 1.0)
    if abs(r - 1.0) < TAYLOR_BAND:
        # log(1+u)/u = 1 - u/2 + u^2/3 - u^3/4 + u^4/5 - u^5/6 + ...
        return 1.0 + u * (-1.0 / 2 + u * (1.0 / 3 + u * (-1.0 / 4 + u * (1.0 / 5 - u / 6))))
    if abs(r - 1.0) < 0.5:
        return math.log1p(u) / u
    return 2.0 * math.log(r) / u


def chord_squared(r: float, theta: float) -> float:
    """|r e^{i theta} - 1|^2 written without cancellation near lambda = 1."""
    return (r - 1.0) ** 2 + 4.0 * r * math.sin(0.5 * theta) ** 2


def gobbling_time_at(r: float, theta: float) -> float:
    """T(r, theta) for raw polar coordinates."""
    _check_radius(r)
    return chord_squared(r, theta) * log_ratio(r)


def gobbling_time(p: PolarPoint) -> float:
    """T(lambda), the time at which lambda is swallowed by the growing domain."""
    return gobbling_time_at(p.r, p.theta)


def _k_and_derivative(s: float) -> tuple[float, float]:
    """k(s) = s / sinh(s) and k'(s), with series near s = 0."""
    if s == 0.0:
        return 1.0, 0.0
    sh = math.sinh(s)
    if abs(s) < _SERIES_BAND:
        # sinh(s) - s cosh(s) = -sum_{k>=1} 2k s^{2k+1} / (2k+1)!
        numerator = 0.0
        power = s
        for k in range(1, 9):
            power *= s * s
            numerator -= 2 * k * power / math.factorial(2 * k + 1)
    else:
        numerator = sh - s * math.cosh(s)
    return s / sh, numerator / (sh * sh)


def gobbling_time_dr_at(r: float, theta: float) -> float:
    """Closed-form dT/dr, computed in the log-radius s = log r.

    With k(s) = s / sinh(s), T = 2 (cosh s - cos theta) k(s), so
    dT/dr = (2 sinh(s) k(s) + 2 (cosh s - cos theta) k'(s)) / r.
    """
    _check_radius(r)
    s = math.log(r)
    k, dk = _k_and_derivative(s)
    spread = 4.0 * math.sinh(0.5 * s) ** 2 + 4.0 * math.sin(0.5 * theta) ** 2
    return (2.0 * math.sinh(s) * k + spread * dk) / r


def gobbling_time_dr(p: PolarPoint) -> float:
    return gobbling_time_dr_at(p.r, p.theta)


def gobbling_time_dtheta_at(r: float, theta: float) -> float:
    """dT/dtheta = 2 r sin(theta) log(r^2) / (r^2 - 1)."""
    _check_radius(r)
    return 2.0 * r * math.sin(theta) * log_ratio(r)


def theta_max(t: float) -> float:
    """Half-width of the angular range of Sigma_t."""
    _check_time(t)
    if t <= 4.0:
        return math.acos(1.0 - 0.5 * t)
    return math.pi


def in_wedge(t: float, theta: float) -> bool:
    """Whether theta lies in the open angular range of Sigma_t."""
    return t > 4.0 or abs(normalize_angle(theta)) < theta_max(t)


def outer_radius(t: float, theta: float, tol: float = ROOT_TOL) -> float:
    """The root r_t(theta) > 1 of T(r, theta) = t.

    Bisection to a bracket of width BRACKET_WIDTH, then at most NEWTON_STEPS
    Newton steps with the closed-form dT/dr.
    """
    _check_time(t)
    theta = normalize_angle(theta)
    cutoff = theta_max(t)
    if t <= 4.0 and abs(theta) >= cutoff:
        raise OutOfWedgeError(t, theta, cutoff)

    def residual(r: float) -> float:
        return gobbling_time_at(r, theta) - t

    if residual(1.0) >= 0.0:
        # t - T(1, theta) below rounding: the ray meets the boundary at the unit circle
        return 1.0

    lo, hi = 1.0, 2.0
    for _ in range(_MAX_BRACKET_DOUBLINGS):
        if residual(hi) > 0.0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise ConvergenceError(
            f"could not bracket r_t(theta) for t={t}, theta={theta}", bracket=(lo, hi)
        )

    r = optimize.bisect(residual, lo, hi, xtol=BRACKET_WIDTH)
    lo_r, hi_r = max(lo, r - BRACKET_WIDTH), min(hi, r + BRACKET_WIDTH)
    for _ in range(NEWTON_STEPS):
        slope = gobbling_time_dr_at(r, theta)
        if slope <= 0.0:
            break
        step = residual(r) / slope
        candidate = r - step
        if not lo_r <= candidate <= hi_r:
            break
        r = candidate
        if abs(step) <= tol * r:
            break

    if abs(residual(r)) > tol * max(1.0, t):
        logger.debug(f"Newton polish stalled at t={t}, theta={theta}; refining with brentq")
        try:
            r = optimize.brentq(residual, lo_r, hi_r, xtol=1e-15, rtol=1e-15)
        except ValueError as exc:
            raise ConvergenceError(
                f"r_t(theta) refinement failed for t={t}, theta={theta}: {exc}",
                bracket=(lo_r, hi_r),
                iterate=r,
            ) from exc
        if abs(residual(r)) > tol * max(1.0, t):
            raise ConvergenceError(
                f"r_t(theta) residual {residual(r):.3e} exceeds tolerance at t={t}, theta={theta}",
                bracket=(lo_r, hi_r),
                iterate=r,
            )
    return r


def inner_radius(t: float, theta: float, tol: float = ROOT_TOL) -> float:
    """The companion root 1 / r_t(theta) < 1."""
    return 1.0 / outer_radius(t, theta, tol)


def contains(t: float, p: PolarPoint, band: float = BAND_TOL) -> Membership:
    """Classify p against Sigma_t using a tolerance band around T = t."""
    _check_time(t)
    value = gobbling_time(p)
    if value < t - band:
        return Membership.INSIDE
    if abs(value - t) <= band:
        return Membership.BOUNDARY
    return Membership.OUTSIDE


def log_coordinates(p: PolarPoint) -> tuple[float, float]:
    """(rho, theta) with rho = log|lambda|; Sigma_t is symmetric under rho -> -rho."""
    return p.rho, p.theta
