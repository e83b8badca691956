"""
Closed-form angular factor omega(r, theta).

    omega(r, theta) = 1 + h(r) (alpha~ cos(theta) + beta~) / (beta~ cos(theta) + alpha~)

with h(r) = r log(r^2) / (r^2 - 1), c(r) = (1 - h) / (r - 1)^2,
alpha~ = 1 + 2 r c and beta~ = 1 - (r^2 + 1) c. On the boundary of Sigma_t,
omega(r_t(theta), theta) = 2 pi t w_t(theta).

Everything is evaluated in the log-radius s = log r, where h = s / sinh(s).
"""

import math
from dataclasses import asdict, dataclass
from typing import Any

from ..errors import DomainError

_SERIES_BAND = 0.5
_TINY_S = 1e-150


@dataclass(frozen=True)
class OmegaParts:
    """h, c and the two coefficient pairs at a radius r."""

    r: float
    h: float
    c: float
    alpha: float
    beta: float
    alpha_tilde: float
    beta_tilde: float

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def _sinh_excess_ratio(s: float) -> float:
    """q(s) = (sinh(s) - s) / s, so that h = 1 / (1 + q) and 1 - h = q / (1 + q)."""
    if abs(s) < _SERIES_BAND:
        total = 0.0
        term = 1.0
        for k in range(1, 9):
            term *= s * s / ((2 * k) * (2 * k + 1))
            total += term
        return total
    return (math.sinh(s) - s) / s


def h_of_r(r: float) -> float:
    """h(r) = r log(r^2) / (r^2 - 1); h(1) = 1 and 0 < h <= 1."""
    if not math.isfinite(r) or r <= 0.0:
        raise DomainError(f"radius must be positive, got r={r!r}")
    return 1.0 / (1.0 + _sinh_excess_ratio(math.log(r)))


def omega_parts(r: float) -> OmegaParts:
    if not math.isfinite(r) or r <= 0.0:
        raise DomainError(f"radius must be positive, got r={r!r}")
    s = math.log(r)
    q = _sinh_excess_ratio(s)
    h = 1.0 / (1.0 + q)
    if abs(s) < _TINY_S:
        c = 1.0 / 6.0
    else:
        c = q / ((1.0 + q) * math.expm1(s) ** 2)
    alpha_tilde = 1.0 + 2.0 * r * c
    beta_tilde = 1.0 - (r * r + 1.0) * c
    gap = (r - 1.0) ** 2
    return OmegaParts(
        r=r,
        h=h,
        c=c,
        alpha=gap * alpha_tilde,
        beta=gap * beta_tilde,
        alpha_tilde=alpha_tilde,
        beta_tilde=beta_tilde,
    )


def omega(r: float, theta: float) -> float:
    """omega(r, theta), smooth through r = 1; 1 - h(r) <= omega <= 1 + h(r)."""
    parts = omega_parts(r)
    cos_t = math.cos(theta)
    ratio = (parts.alpha_tilde * cos_t + parts.beta_tilde) / (
        parts.beta_tilde * cos_t + parts.alpha_tilde
    )
    return 1.0 + parts.h * ratio


def omega_unregularized(r: float, theta: float) -> float:
    """omega from alpha = r^2 + 1 - 2 r h and beta = (r^2 + 1) h - 2 r directly.

    Both vanish to second order at r = 1, so this form is only usable away from
    the unit circle; it serves as an independent check on ``omega``.
    """
    if r == 1.0:
        raise DomainError("the unregularized form is 0/0 at r = 1")
    h = h_of_r(r)
    alpha = r * r + 1.0 - 2.0 * r * h
    beta = (r * r + 1.0) * h - 2.0 * r
    cos_t = math.cos(theta)
    return 1.0 + h * (alpha * cos_t + beta) / (beta * cos_t + alpha)


def omega_on_unit_circle(theta: float) -> float:
    """omega(1, theta) = 3 (1 + cos(theta)) / (2 + cos(theta))."""
    cos_t = math.cos(theta)
    return 3.0 * (1.0 + cos_t) / (2.0 + cos_t)
