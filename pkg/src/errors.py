"""
Error hierarchy for the Brown measure toolkit.

Every failure raised by the numerical modules derives from ``BrownMeasureError``
and carries the numbers that produced it, so callers can report or inspect them.
"""

from typing import Any, Optional


class BrownMeasureError(Exception):
    """Base class for all toolkit errors."""

    def to_dict(self) -> dict[str, Any]:
        return {"error": type(self).__name__, "message": str(self)}


class DomainError(BrownMeasureError, ValueError):
    """An argument lies outside the domain of the function."""


class OutOfWedgeError(DomainError):
    """Angle outside the open wedge |theta| < theta_max(t)."""

    def __init__(self, t: float, theta: float, theta_max: float):
        self.t = t
        self.theta = theta
        self.theta_max = theta_max
        super().__init__(
            f"theta={theta:.17g} is outside the wedge |theta| < {theta_max:.17g} at t={t:g}"
        )


class OutsideDomainError(DomainError):
    """Point outside the closure of Sigma_t."""

    def __init__(self, t: float, point: complex, gobbling_time: Optional[float] = None):
        self.t = t
        self.point = point
        self.gobbling_time = gobbling_time
        detail = f" (T={gobbling_time:.6g})" if gobbling_time is not None else ""
        super().__init__(f"lambda={point} lies outside the closed domain at t={t:g}{detail}")


class PoleError(DomainError):
    """Evaluation at the pole lambda = 1 of f_t."""


class ConvergenceError(BrownMeasureError):
    """An iterative solver did not converge."""

    def __init__(self, message: str, bracket: Optional[tuple[float, float]] = None,
                 iterate: Any = None):
        self.bracket = bracket
        self.iterate = iterate
        super().__init__(message)

    def to_dict(self) -> dict[str, Any]:
        data = super().to_dict()
        data["bracket"] = list(self.bracket) if self.bracket else None
        return data


class ChartInversionError(ConvergenceError):
    """The (lambda0, x0) chart could not be inverted at the requested point."""


class BlowupError(BrownMeasureError):
    """Evaluation of a characteristic at or beyond its lifetime t_star."""

    def __init__(self, t: float, t_star: float):
        self.t = t
        self.t_star = t_star
        super().__init__(f"t={t:.17g} is not below the lifetime t_star={t_star:.17g}")


class QuadratureError(BrownMeasureError):
    """Quadrature produced a non-finite or unreliable value."""

    def __init__(self, message: str, nodes: int, estimate: float = float("nan")):
        self.nodes = nodes
        self.estimate = estimate
        super().__init__(f"{message} (nodes={nodes}, estimate={estimate!r})")


class EigenSolverError(BrownMeasureError):
    """LAPACK non-convergence or failed backward-error check."""


class SimulationError(BrownMeasureError):
    """Monte Carlo matrix became non-finite."""


class EmptyCloudError(BrownMeasureError):
    """Comparison requested on an empty eigenvalue cloud."""


class ConfigError(BrownMeasureError):
    """Invalid run or simulation configuration."""


class OutOfArcError(DomainError):
    """Angle phi outside the support arc |phi| <= phi_max(t) of Biane's measure."""

    def __init__(self, t: float, phi: float, phi_max: float):
        self.t = t
        self.phi = phi
        self.phi_max = phi_max
        super().__init__(f"phi={phi:.17g} is outside the arc |phi| <= {phi_max:.17g} at t={t:g}")
