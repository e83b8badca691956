"""
Hamiltonian system whose characteristics carry the regularized log-determinant.

    H(a, b, x, p_a, p_b, p_x) = -x p_x (1 + (a^2 + b^2) p_x - x p_x - a p_a - b p_b)

Hamilton's equations for H form six coupled ODEs in the position (a, b, x) and
momentum (p_a, p_b, p_x). Initial momenta are fixed by a starting point
lambda_0 = a_0 + i b_0 and a regularization x_0 >= 0.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

from ..errors import DomainError

logger = logging.getLogger(__name__)

STATE_SIZE = 6


@dataclass(frozen=True)
class HJState:
    """Point (a, b, x, p_a, p_b, p_x) of phase space at time t."""

    a: float
    b: float
    x: float
    p_a: float
    p_b: float
    p_x: float
    t: float = 0.0

    @property
    def lam(self) -> complex:
        return complex(self.a, self.b)

    @property
    def angular_momentum(self) -> float:
        return self.a * self.p_b - self.b * self.p_a

    @property
    def psi(self) -> float:
        """x p_x + (a p_a + b p_b) / 2, a constant of motion."""
        return self.x * self.p_x + 0.5 * (self.a * self.p_a + self.b * self.p_b)

    def to_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.x, self.p_a, self.p_b, self.p_x])

    @classmethod
    def from_array(cls, values: np.ndarray, t: float = 0.0) -> "HJState":
        a, b, x, p_a, p_b, p_x = (float(v) for v in values[:STATE_SIZE])
        return cls(a=a, b=b, x=x, p_a=p_a, p_b=p_b, p_x=p_x, t=t)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class HJConstants:
    """Quantities fixed by the initial condition (lambda_0, x_0).

    p0 = 1 / (|lambda_0 - 1|^2 + x_0), delta = (|lambda_0|^2 + 1 + x_0) / |lambda_0|,
    C = p0 (|lambda_0|^2 - 1 + x_0), Psi = (C + 1) / 2, H0 = -x_0 p0^2,
    y0 = p0 + C / 2 and a_sq = C^2 / 4 + x_0 p0^2.
    """

    lambda0: complex
    x0: float
    p0: float
    delta: float
    C: float
    Psi: float
    H0: float
    y0: float
    a_sq: float

    @classmethod
    def from_initial(cls, lambda0: complex, x0: float) -> "HJConstants":
        lambda0 = complex(lambda0)
        if lambda0 == 0:
            raise DomainError("lambda0 = 0 is excluded: the characteristics need |lambda0| > 0")
        if not math.isfinite(x0) or x0 < 0.0:
            raise DomainError(f"x0 must be non-negative, got x0={x0!r}")
        modulus = abs(lambda0)
        gap = abs(lambda0 - 1.0) ** 2 + x0
        if gap == 0.0:
            raise DomainError("lambda0 = 1 with x0 = 0 has no finite initial momentum")
        p0 = 1.0 / gap
        c = p0 * (modulus * modulus - 1.0 + x0)
        return cls(
            lambda0=lambda0,
            x0=x0,
            p0=p0,
            delta=(modulus * modulus + 1.0 + x0) / modulus,
            C=c,
            Psi=0.5 * (c + 1.0),
            H0=-x0 * p0 * p0,
            y0=p0 + 0.5 * c,
            a_sq=0.25 * c * c + x0 * p0 * p0,
        )

    @property
    def r0(self) -> float:
        return abs(self.lambda0)

    @property
    def theta0(self) -> float:
        return math.atan2(self.lambda0.imag, self.lambda0.real)

    @property
    def delta_minus_two(self) -> float:
        """delta - 2 = ((|lambda_0| - 1)^2 + x_0) / |lambda_0|, without cancellation."""
        return ((self.r0 - 1.0) ** 2 + self.x0) / self.r0

    @property
    def gamma_sq(self) -> float:
        """delta^2 - 4."""
        dm2 = self.delta_minus_two
        return dm2 * (dm2 + 4.0)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["lambda0"] = [self.lambda0.real, self.lambda0.imag]
        return data


def hamiltonian_at(a: float, b: float, x: float, p_a: float, p_b: float, p_x: float) -> float:
    return -x * p_x * (1.0 + (a * a + b * b) * p_x - x * p_x - a * p_a - b * p_b)


def hamiltonian(s: HJState) -> float:
    return hamiltonian_at(s.a, s.b, s.x, s.p_a, s.p_b, s.p_x)


def init_state(lambda0: complex, x0: float) -> tuple[HJState, HJConstants]:
    """Initial point p_a = 2 (a_0 - 1) p0, p_b = 2 b_0 p0, p_x = p0."""
    constants = HJConstants.from_initial(lambda0, x0)
    lambda0 = complex(lambda0)
    p0 = constants.p0
    state = HJState(
        a=lambda0.real,
        b=lambda0.imag,
        x=float(x0),
        p_a=2.0 * (lambda0.real - 1.0) * p0,
        p_b=2.0 * lambda0.imag * p0,
        p_x=p0,
    )
    return state, constants


def hamilton_rhs(y: np.ndarray) -> np.ndarray:
    """Time derivative of (a, b, x, p_a, p_b, p_x, log|lambda|).

    The seventh slot accumulates the integral of x p_x, which is d log|lambda| / dt.
    """
    a, b, x, p_a, p_b, p_x = y[:STATE_SIZE]
    modulus_sq = a * a + b * b
    radial = a * p_a + b * p_b
    flow = x * p_x
    out = np.empty_like(y)
    out[0] = a * flow
    out[1] = b * flow
    out[2] = -x * (1.0 + 2.0 * modulus_sq * p_x - 2.0 * flow - radial)
    out[3] = flow * (2.0 * a * p_x - p_a)
    out[4] = flow * (2.0 * b * p_x - p_b)
    out[5] = p_x * (1.0 + modulus_sq * p_x - 2.0 * flow - radial)
    if y.size > STATE_SIZE:
        out[STATE_SIZE] = flow
    return out


def rescale(s: HJState, sigma: float) -> HJState:
    """One-parameter symmetry of H: positions scale by e^{sigma/2}, e^{sigma}, momenta inversely."""
    half = math.exp(0.5 * sigma)
    full = math.exp(sigma)
    return HJState(
        a=half * s.a,
        b=half * s.b,
        x=full * s.x,
        p_a=s.p_a / half,
        p_b=s.p_b / half,
        p_x=s.p_x / full,
        t=s.t,
    )
