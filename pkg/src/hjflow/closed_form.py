"""
Closed-form solution of the characteristic system.

With a = sqrt(a_sq) and k = p0 |lambda_0| / 2 the reciprocal momentum is

    1 / p_x(t) = e^{Ct} (cosh(at) - delta k sinh(at)/a)
                 / (p0 (cosh(at) + (2|lambda_0| - delta) k sinh(at)/a)),

an even analytic function of a. Its first zero is the lifetime t_star, where
p_x blows up. The remaining components follow from the constants of motion:

    x(t) = x_0 p0^2 e^{-Ct} / p_x^2,
    |lambda(t)|^2 = e^{Ct} + C / p_x - x_0 p0^2 e^{-Ct} / p_x^2,

and arg(lambda(t)) is conserved.
"""

import logging
import math

from ..errors import BlowupError, DomainError
from .hamiltonian import HJConstants

logger = logging.getLogger(__name__)

_EVEN_SERIES_BAND = 1e-8
_ATANH_SERIES_BAND = 1e-2
_ATANH_TERMS = 14


def even_cosh_sinc(a_sq: float, t: float) -> tuple[float, float]:
    """(cosh(a t), sinh(a t) / a) as functions of a^2, real for either sign of a^2."""
    arg = a_sq * t * t
    if abs(arg) < _EVEN_SERIES_BAND:
        return 1.0 + 0.5 * arg + arg * arg / 24.0, t * (1.0 + arg / 6.0 + arg * arg / 120.0)
    if a_sq > 0.0:
        a = math.sqrt(a_sq)
        return math.cosh(a * t), math.sinh(a * t) / a
    w = math.sqrt(-a_sq)
    return math.cos(w * t), math.sin(w * t) / w


def _reciprocal_parts(c: HJConstants, t: float) -> tuple[float, float]:
    """Numerator and denominator of 1 / p_x before the e^{Ct} / p0 factor."""
    cosh_at, sinc_at = even_cosh_sinc(c.a_sq, t)
    k = 0.5 * c.p0 * c.r0
    blow = cosh_at - c.delta * k * sinc_at
    growth = cosh_at + (2.0 * c.r0 - c.delta) * k * sinc_at
    return blow, growth


def q_analytic(c: HJConstants, t: float) -> float:
    """1 / p_x(t), continued analytically past t_star (where it changes sign)."""
    if c.x0 == 0.0:
        if c.C == 0.0:
            return 1.0 / c.p0 - t
        return 1.0 / c.p0 - math.expm1(c.C * t) / c.C
    blow, growth = _reciprocal_parts(c, t)
    return math.exp(c.C * t) * blow / (c.p0 * growth)


def _check_before_lifetime(c: HJConstants, t: float) -> None:
    if t < 0.0:
        raise DomainError(f"time must be non-negative, got t={t!r}")
    lifetime = t_star_from(c)
    if t >= lifetime:
        raise BlowupError(t, lifetime)


def px_closed_form(c: HJConstants, t: float) -> float:
    """p_x(t), positive on [0, t_star)."""
    _check_before_lifetime(c, t)
    return 1.0 / q_analytic(c, t)


def x_closed_form(c: HJConstants, t: float) -> float:
    q = q_analytic(c, t)
    return c.x0 * c.p0 * c.p0 * math.exp(-c.C * t) * q * q


def z_closed_form(c: HJConstants, t: float) -> float:
    """z(t) = sqrt(x(t)), continued analytically; negative beyond t_star."""
    return math.sqrt(c.x0) * c.p0 * math.exp(-0.5 * c.C * t) * q_analytic(c, t)


def lambda_modulus_sq(c: HJConstants, t: float) -> float:
    q = q_analytic(c, t)
    return math.exp(c.C * t) + c.C * q - c.x0 * c.p0 * c.p0 * math.exp(-c.C * t) * q * q


def log_lambda_closed_form(c: HJConstants, t: float) -> float:
    """log|lambda(t)|."""
    value = lambda_modulus_sq(c, t)
    if value <= 0.0:
        raise DomainError(f"|lambda(t)|^2 = {value:.3e} is not positive at t={t}")
    return 0.5 * math.log(value)


def lambda_closed_form(c: HJConstants, t: float) -> complex:
    """lambda(t) = e^{i theta_0} |lambda(t)|."""
    return math.exp(log_lambda_closed_form(c, t)) * complex(
        math.cos(c.theta0), math.sin(c.theta0)
    )


def radial_momentum(c: HJConstants, t: float) -> float:
    """a p_a + b p_b = C + 1 - 2 x p_x."""
    q = q_analytic(c, t)
    return c.C + 1.0 - 2.0 * c.x0 * c.p0 * c.p0 * math.exp(-c.C * t) * q


def _log_ratio_over_gamma(delta_minus_two: float) -> float:
    """log((delta + gamma) / (delta - gamma)) / gamma with gamma = sqrt(delta^2 - 4).

    Equals (2 / delta) atanh(w) / w for w = gamma / delta, with the removable
    value 1 at delta = 2.
    """
    if delta_minus_two < 0.0:
        raise DomainError(f"delta must be at least 2, got delta - 2 = {delta_minus_two!r}")
    delta = 2.0 + delta_minus_two
    gamma_sq = delta_minus_two * (delta_minus_two + 4.0)
    w_sq = gamma_sq / (delta * delta)
    if w_sq < _ATANH_SERIES_BAND:
        total = 0.0
        power = 1.0
        for k in range(_ATANH_TERMS):
            total += power / (2 * k + 1)
            power *= w_sq
        return 2.0 * total / delta
    gamma = math.sqrt(gamma_sq)
    # (delta + gamma)(delta - gamma) = 4
    return 2.0 * math.log1p(0.5 * (delta_minus_two + gamma)) / gamma


def _log_ratio_over_gamma_derivative(delta_minus_two: float) -> float:
    """d/d delta of _log_ratio_over_gamma."""
    delta = 2.0 + delta_minus_two
    gamma_sq = delta_minus_two * (delta_minus_two + 4.0)
    w_sq = gamma_sq / (delta * delta)
    if w_sq < _ATANH_SERIES_BAND:
        series = 0.0
        slope = 0.0
        power = 1.0
        for k in range(_ATANH_TERMS):
            series += power / (2 * k + 1)
            if k + 1 < _ATANH_TERMS:
                slope += (k + 1) * power / (2 * k + 3)
            power *= w_sq
        # w^2 = 1 - 4 / delta^2
        return -2.0 * series / delta**2 + (2.0 / delta) * slope * 8.0 / delta**3
    gamma = math.sqrt(gamma_sq)
    log_ratio = 2.0 * math.log1p(0.5 * (delta_minus_two + gamma))
    return (2.0 * gamma - delta * log_ratio) / gamma**3


def g_of_delta(theta0: float, delta: float) -> float:
    """Lifetime as a function of delta at fixed angle theta_0, non-decreasing in delta."""
    if delta < 2.0:
        raise DomainError(f"delta must be at least 2, got delta={delta!r}")
    spread = (delta - 2.0) + 4.0 * math.sin(0.5 * theta0) ** 2
    return spread * _log_ratio_over_gamma(delta - 2.0)


def g_derivative(theta0: float, delta: float) -> float:
    """d g_theta0 / d delta, positive for delta > 2."""
    if delta < 2.0:
        raise DomainError(f"delta must be at least 2, got delta={delta!r}")
    dm2 = delta - 2.0
    spread = dm2 + 4.0 * math.sin(0.5 * theta0) ** 2
    return _log_ratio_over_gamma(dm2) + spread * _log_ratio_over_gamma_derivative(dm2)


def t_star_from(c: HJConstants) -> float:
    spread = c.delta_minus_two + 4.0 * math.sin(0.5 * c.theta0) ** 2
    return spread * _log_ratio_over_gamma(c.delta_minus_two)


def t_star(lambda0: complex, x0: float) -> float:
    """First time at which p_x blows up; equals T(lambda_0) when x_0 = 0."""
    return t_star_from(HJConstants.from_initial(lambda0, x0))


def log_lambda_at_lifetime(lambda0: complex, x0: float) -> float:
    """log|lambda(t_star)| = (delta - 2 / |lambda_0|) ratio / 2, equal to C t_star / 2."""
    c = HJConstants.from_initial(lambda0, x0)
    skew = (c.r0 * c.r0 - 1.0 + x0) / c.r0
    return 0.5 * skew * _log_ratio_over_gamma(c.delta_minus_two)


def lifetime_momentum_limit(lambda0: complex, x0: float) -> float:
    """Limit of a p_a + b p_b as t -> t_star: 2 log|lambda(t_star)| / t_star + 1."""
    return 2.0 * log_lambda_at_lifetime(lambda0, x0) / t_star(lambda0, x0) + 1.0
