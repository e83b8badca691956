"""
Sampled boundary of Sigma_t.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
import pandas as pd

from ..errors import DomainError
from .gobbling import ROOT_TOL, _check_time, gobbling_time_at, outer_radius, theta_max

logger = logging.getLogger(__name__)

MIN_SAMPLES = 16


def theta_grid(t: float, n: int) -> np.ndarray:
    """Symmetric increasing grid of n angles inside the wedge.

    Chebyshev nodes on (-theta_max, theta_max) for t <= 4 (dense near the tips,
    endpoints excluded); a midpoint grid on (-pi, pi) for t > 4.
    """
    _check_time(t)
    if n < 1:
        raise DomainError(f"grid size must be positive, got n={n}")
    half = n // 2
    k = np.arange(half)
    if t <= 4.0:
        positive = theta_max(t) * np.cos(np.pi * (k + 0.5) / n)
    else:
        positive = np.pi * (n - 1 - 2 * k) / n
    middle = np.zeros(1) if n % 2 else np.zeros(0)
    return np.concatenate([-positive, middle, positive[::-1]])


@dataclass
class RegionBoundary:
    """Outer radii r_t(theta) sampled on a symmetric theta grid."""

    t: float
    theta_max: float
    theta: np.ndarray
    r_outer: np.ndarray
    tol: float = ROOT_TOL
    # limiting radius at theta = +/- theta_max, recorded separately from the samples
    cutoff_radius: Optional[float] = None
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def r_inner(self) -> np.ndarray:
        return 1.0 / self.r_outer

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.theta.tolist(), self.r_outer.tolist()))

    def residuals(self) -> np.ndarray:
        """|T(r_outer, theta) - t| at every sample."""
        return np.array(
            [abs(gobbling_time_at(r, th) - self.t) for th, r in zip(self.theta, self.r_outer)]
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"theta": self.theta, "r_outer": self.r_outer, "r_inner": self.r_inner}
        )

    def outline(self) -> tuple[np.ndarray, np.ndarray]:
        """Closed outer and inner boundary curves as complex arrays."""
        theta = self.theta
        r_out, r_in = self.r_outer, self.r_inner
        if self.cutoff_radius is not None:
            theta = np.concatenate([[-self.theta_max], theta, [self.theta_max]])
            r_out = np.concatenate([[self.cutoff_radius], r_out, [self.cutoff_radius]])
            r_in = 1.0 / r_out
        return r_out * np.exp(1j * theta), r_in * np.exp(1j * theta)

    def to_dict(self) -> dict[str, Any]:
        return {
            "t": self.t,
            "n": int(self.theta.size),
            "theta_max": self.theta_max,
            "tol": self.tol,
            "cutoff_radius": self.cutoff_radius,
            **self.metadata,
        }


def sample_boundary(t: float, n: int, tol: float = ROOT_TOL) -> RegionBoundary:
    """Tabulate r_t(theta) on n symmetric angles."""
    _check_time(t)
    if n < MIN_SAMPLES:
        raise DomainError(f"boundary sampling needs n >= {MIN_SAMPLES}, got n={n}")
    grid = theta_grid(t, n)
    half = grid[grid >= 0.0]
    radii_half = np.array([outer_radius(t, float(th), tol) for th in half])
    # evenness of T in theta: mirror the non-negative half
    negative = radii_half[half > 0.0][::-1]
    radii = np.concatenate([negative, radii_half])
    logger.debug(f"Sampled {n} boundary radii at t={t}: max r={radii.max():.6g}")
    return RegionBoundary(
        t=t,
        theta_max=theta_max(t),
        theta=grid,
        r_outer=radii,
        tol=tol,
        cutoff_radius=1.0 if t <= 4.0 else None,
    )


def annulus_estimate(t: float) -> tuple[float, float]:
    """Large-t approximation e^{-t/2} < |lambda| < e^{t/2} of Sigma_t."""
    _check_time(t)
    return math.exp(-0.5 * t), math.exp(0.5 * t)


def disk_estimate(t: float) -> tuple[complex, float]:
    """Small-t approximation of Sigma_t by the disk of radius sqrt(t) about 1."""
    _check_time(t)
    return 1.0 + 0.0j, math.sqrt(t)
