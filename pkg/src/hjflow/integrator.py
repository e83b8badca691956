"""
Time stepping for the characteristic system

Classes
-------

- `RK4` -- classical 4th order Runge-Kutta time-stepping
- `Trajectory` -- recorded solution with its constants of motion
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

import numpy as np
import pandas as pd

from ..errors import BlowupError, ConvergenceError, DomainError
from .closed_form import t_star_from
from .hamiltonian import STATE_SIZE, HJConstants, HJState, hamilton_rhs, hamiltonian_at, init_state

logger = logging.getLogger(__name__)

DEFAULT_DIVISIONS = 4096
REFINE_FRACTION = 0.9
TRAJECTORY_COLUMNS = ["t", "a", "b", "x", "p_a", "p_b", "p_x", "H", "L", "Psi", "xpx2"]


class RK4:
    """
    4th order Runge-Kutta time-stepping.

    Parameters
    ----------

    U : np.ndarray
        State vector, updated in place
    rhs_func : callable
        U -> dU/dt
    """

    def __init__(self, U: np.ndarray, rhs_func: Callable[[np.ndarray], np.ndarray]):
        self.U = U
        self.rhs_func = rhs_func
        self._allocate_arrays()

    def step(self, dt: float) -> None:
        """
        Take a time-step of "dt" and update U.

        Parameters
        ----------

        dt : float
            Time step length
        """
        self.U0[...] = self.U

        ki = [dt / 6, dt / 3, dt / 3]
        hi = [dt / 2, dt / 2, dt]

        self.U1[...] = 0.0
        for h, k in zip(hi, ki):
            rhs = self.rhs_func(self.U)
            self.U[...] = self.U0 + h * rhs
            self.U1 += k * rhs

        rhs = self.rhs_func(self.U)
        self.U[...] = self.U0 + self.U1 + (dt / 6) * rhs

    def _allocate_arrays(self) -> None:
        """
        Allocate extra storage for the stage sums
        """
        self.U0 = np.copy(self.U)
        self.U1 = np.zeros_like(self.U)


@dataclass
class Trajectory:
    """Sampled characteristic with the running integral of x p_x."""

    constants: HJConstants
    t_star: float
    times: np.ndarray
    states: np.ndarray
    metadata: dict[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return int(self.times.size)

    def state(self, index: int = -1) -> HJState:
        return HJState.from_array(self.states[index], t=float(self.times[index]))

    @property
    def log_lambda(self) -> np.ndarray:
        """log|lambda(t)| accumulated as log|lambda_0| + integral of x p_x."""
        return math.log(self.constants.r0) + self.states[:, STATE_SIZE]

    def invariants(self) -> pd.DataFrame:
        a, b, x, p_a, p_b, p_x = (self.states[:, k] for k in range(STATE_SIZE))
        hamiltonian = hamiltonian_at(a, b, x, p_a, p_b, p_x)
        return pd.DataFrame(
            {
                "H": hamiltonian,
                "L": a * p_b - b * p_a,
                "Psi": x * p_x + 0.5 * (a * p_a + b * p_b),
                "xpx2": x * p_x * p_x,
            }
        )

    def to_frame(self) -> pd.DataFrame:
        """Columns t,a,b,x,p_a,p_b,p_x,H,L,Psi,xpx2 (xpx2 is x p_x^2)."""
        frame = pd.DataFrame(self.states[:, :STATE_SIZE], columns=TRAJECTORY_COLUMNS[1:7])
        frame.insert(0, "t", self.times)
        return pd.concat([frame, self.invariants()], axis=1)[TRAJECTORY_COLUMNS]

    def drift(self) -> dict[str, float]:
        """Largest relative departure of each conserved quantity from its initial value.

        x p_x^2 is compared after multiplying by e^{Ct}.
        """
        inv = self.invariants()
        inv["xpx2"] = inv["xpx2"] * np.exp(self.constants.C * self.times)
        report = {}
        for name in inv.columns:
            values = inv[name].to_numpy()
            scale = max(abs(values[0]), 1.0)
            report[name] = float(np.max(np.abs(values - values[0])) / scale)
        return report

    def to_dict(self) -> dict[str, Any]:
        return {
            **self.constants.to_dict(),
            "t_star": self.t_star,
            "t_end": float(self.times[-1]),
            "steps": len(self) - 1,
            **self.metadata,
        }


def integrate(
    s0: HJState,
    t_end: float,
    dt: Optional[float] = None,
    constants: Optional[HJConstants] = None,
) -> Trajectory:
    """RK4 integration of Hamilton's equations from s0 up to t_end < t_star.

    The default step is t_star / 4096, halved once t passes 0.9 t_star.
    """
    if constants is None:
        constants = HJConstants.from_initial(s0.lam, s0.x)
    lifetime = t_star_from(constants)
    if t_end < 0.0:
        raise DomainError(f"t_end must be non-negative, got {t_end!r}")
    if t_end >= lifetime:
        raise BlowupError(t_end, lifetime)
    base = dt if dt is not None else lifetime / DEFAULT_DIVISIONS
    if base <= 0.0:
        raise DomainError(f"step must be positive, got dt={base!r}")

    U = np.concatenate([s0.to_array(), [0.0]])
    stepper = RK4(U, hamilton_rhs)
    t = s0.t
    times = [t]
    states = [U.copy()]
    while t < t_end:
        step = base if t < REFINE_FRACTION * lifetime else 0.5 * base
        step = min(step, t_end - t)
        if t + step == t:
            raise ConvergenceError(f"step size underflow at t={t!r} approaching t_star={lifetime!r}")
        stepper.step(step)
        if not np.all(np.isfinite(U)):
            raise ConvergenceError(f"non-finite state at t={t + step!r}", iterate=U.copy())
        t += step
        times.append(t)
        states.append(U.copy())

    logger.debug(f"Integrated {len(times) - 1} RK4 steps to t={t_end:.6g} (t_star={lifetime:.6g})")
    return Trajectory(
        constants=constants,
        t_star=lifetime,
        times=np.array(times),
        states=np.array(states),
        metadata={"dt": base},
    )


def integrate_from(lambda0: complex, x0: float, fraction: float = 0.95, dt: Optional[float] = None) -> Trajectory:
    """Integrate the characteristic starting at (lambda0, x0) to fraction * t_star."""
    state, constants = init_state(lambda0, x0)
    return integrate(state, fraction * t_star_from(constants), dt=dt, constants=constants)


def integrate_batch(
    cases: Iterable[tuple[complex, float]], fraction: float = 0.95, workers: int = 1
) -> list[Trajectory]:
    """Independent trajectories, returned in input order."""
    cases = list(cases)
    if workers <= 1:
        return [integrate_from(lam, x0, fraction) for lam, x0 in cases]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda case: integrate_from(case[0], case[1], fraction), cases))
