#!/usr/bin/env python3
"""
Verification Suite

Runs the numerical acceptance checks of the toolkit and reports each one as
PASS or FAIL with the measured value, its threshold and the time it took.

The quick subset covers the closed forms, quadrature, density routes,
asymptotics, lifetime identities, a reduced ODE panel and the pushforward
identity. The full suite adds boundary matching of s_t, the PDE residual, the
Monte Carlo comparisons and the GL(N) trace moment.
"""

import cmath
import logging
import math
import time
from dataclasses import asdict, dataclass
from typing import Any, Callable

import numpy as np

from ..density.angular import CROSS_CHECK_TOL, route_discrepancy, total_mass, w_of_theta
from ..density.omega import omega
from ..errors import BrownMeasureError
from ..hjflow.closed_form import px_closed_form, t_star
from ..hjflow.integrator import Trajectory, integrate_from
from ..hjflow.surjectivity import x0_for_lifetime
from ..hjflow.value import outside_radial_derivative, pde_residual_order, s_radial_derivative, s_t
from ..matsim.compare import KS_THRESHOLD, compare_to_brown, compare_unitary
from ..matsim.sampler import Group, SimConfig, simulate, trace_moment
from ..region.boundary import theta_grid
from ..region.gobbling import PolarPoint, gobbling_time, outer_radius
from ..unitary_shadow.biane import biane_mass, pushforward_check

logger = logging.getLogger(__name__)

CheckOutcome = tuple[float, float, str]

MASS_TIMES = (0.5, 1.0, 2.0, 4.0, 7.0)
ROUTE_TIMES = (0.5, 2.0, 4.0, 7.0)
LIFETIME_TIMES = (1.0, 2.0, 4.0, 7.0)
MATCH_TIMES = (2.0, 4.0, 7.0)
MC_TIMES = (2.0, 4.1)
BOUNDARY_OFFSET = 1e-4
PDE_ORDER_BAND = (3.2, 4.8)
PDE_FLOOR = 1e-9
MOMENT_SIGMAS = 3.0
ODE_STARTS = (
    0.5,
    0.5 + 0.5j,
    2.0,
    2.0 - 1.0j,
    cmath.exp(1j * math.pi / 3),
    cmath.exp(2.0j),
    -0.7,
    1.5j,
    0.9 + 0.1j,
    3.0,
)
ODE_X0 = (0.0, 1.0)
PDE_PANEL = (
    (1.0, 2.5 + 0.0j, 0.1),
    (2.0, 1.1 + 0.0j, 0.05),
    (1.0, 3.0 + 0.0j, 0.2),
    (0.5, 1.5j, 0.1),
    (2.0, 0.5 + 0.5j, 0.1),
    (3.0, -0.5 + 0.0j, 0.2),
    (4.5, -1.0 + 0.0j, 0.1),
    (1.5, 0.8 + 0.3j, 0.05),
    (2.5, 2.0 + 2.0j, 0.15),
    (1.0, 0.2 + 0.0j, 0.1),
)


@dataclass
class CheckResult:
    """Outcome of one verification check."""

    name: str
    passed: bool
    value: float
    threshold: float
    detail: str = ""
    seconds: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class SuiteOptions:
    quick: bool = False
    seed: int = 7
    workers: int = 1
    mc_size: int = 500
    mc_steps: int = 500
    mc_samples: int = 4
    unitary_size: int = 256
    moment_size: int = 64
    moment_steps: int = 1000
    moment_samples: int = 100


class VerificationSuite:
    """Acceptance checks over all numerical modules."""

    def __init__(self, options: SuiteOptions | None = None):
        self.options = options or SuiteOptions()
        self._panel: list[Trajectory] | None = None

    # -- closed forms and quadrature ------------------------------------------------

    def check_omega_anchors(self) -> CheckOutcome:
        errors = [
            abs(omega(1.0, 0.0) - 2.0),
            abs(omega(1.0, math.pi)),
            abs(omega(1.0, 0.5 * math.pi) - 1.5),
        ]
        return max(errors), 1e-10, "omega(1, 0), omega(1, pi), omega(1, pi/2)"

    def _mass_times(self) -> tuple[float, ...]:
        return (2.0,) if self.options.quick else MASS_TIMES

    def check_mass(self) -> CheckOutcome:
        times = self._mass_times()
        worst = max(abs(total_mass(t) - 1.0) for t in times)
        return worst, 1e-5, f"t in {times}"

    def check_biane_mass(self) -> CheckOutcome:
        times = self._mass_times()
        worst = max(abs(biane_mass(t) - 1.0) for t in times)
        return worst, 1e-6, f"t in {times}"

    def check_routes(self) -> CheckOutcome:
        times = (2.0,) if self.options.quick else ROUTE_TIMES
        worst = max(route_discrepancy(t, theta_grid(t, 257)) for t in times)
        return worst, CROSS_CHECK_TOL, f"257 angles at t in {times}"

    def check_asymptotics(self) -> CheckOutcome:
        small = max(abs(math.pi * 0.1 * w_of_theta(0.1, float(th)) - 1.0) for th in theta_grid(0.1, 257))
        large = max(abs(2.0 * math.pi * 20.0 * w_of_theta(20.0, float(th)) - 1.0) for th in theta_grid(20.0, 257))
        return max(small, large), 0.05, f"t=0.1: {small:.4f}, t=20: {large:.4f}"

    # -- characteristics -------------------------------------------------------------

    def check_lifetimes(self) -> CheckOutcome:
        radii = (0.3, 0.6, 0.9, 1.0, 1.2, 1.7, 2.5, 4.0) if not self.options.quick else (0.6, 1.0, 2.5)
        angles = np.linspace(-math.pi, math.pi, 11)[1:] + 0.05
        worst = 0.0
        for r in radii:
            for theta in angles:
                lam = cmath.rect(r, float(theta))
                worst = max(worst, abs(t_star(lam, 0.0) - gobbling_time(PolarPoint(r, float(theta)))))
        times = (2.0,) if self.options.quick else LIFETIME_TIMES
        for t in times:
            for theta in theta_grid(t, 8):
                r_t = outer_radius(t, float(theta))
                for fraction in (-0.8, -0.3, 0.3, 0.8):
                    lam = cmath.rect(r_t**fraction, float(theta))
                    worst = max(worst, abs(t_star(lam, x0_for_lifetime(t, lam)) - t))
        return worst, 1e-9, f"{len(radii) * angles.size} starts, round trips at t in {times}"

    def _trajectories(self) -> list[Trajectory]:
        if self._panel is None:
            starts = ODE_STARTS[:2] if self.options.quick else ODE_STARTS
            self._panel = [integrate_from(lam, x0, fraction=0.95) for lam in starts for x0 in ODE_X0]
        return self._panel

    def check_ode_momentum(self) -> CheckOutcome:
        worst = 0.0
        for traj in self._trajectories():
            numeric = traj.states[:, 5]
            exact = np.array([px_closed_form(traj.constants, float(s)) for s in traj.times])
            worst = max(worst, float(np.max(np.abs(numeric - exact) / np.abs(exact))))
        return worst, 1e-6, f"{len(self._trajectories())} characteristics on [0, 0.95 t_star]"

    def check_ode_invariants(self) -> CheckOutcome:
        worst = 0.0
        for traj in self._trajectories():
            worst = max(worst, max(traj.drift().values()))
        return worst, 1e-8, "H, a p_b - b p_a, Psi, x p_x^2 e^{Ct}"

    def _match_samples(self) -> list[tuple[float, float, float]]:
        samples = []
        for t in MATCH_TIMES:
            for theta in theta_grid(t, 32):
                rho_t = math.log(outer_radius(t, float(theta)))
                if rho_t > 10.0 * BOUNDARY_OFFSET:
                    samples.append((t, float(theta), rho_t))
        return samples

    def check_boundary_matching(self) -> CheckOutcome:
        """Inside and outside branches, each extended to the boundary from one offset point."""
        worst = 0.0
        count = 0
        for t, theta, rho_t in self._match_samples():
            for sign in (1.0, -1.0):
                rho_b = sign * rho_t
                rho_in = sign * (rho_t - BOUNDARY_OFFSET)
                rho_out = sign * (rho_t + BOUNDARY_OFFSET)
                step_in = rho_b - rho_in
                step_out = rho_b - rho_out
                # s_t is exactly quadratic in rho inside, with second derivative 2/t
                from_inside = (
                    s_t(t, cmath.rect(math.exp(rho_in), theta))
                    + step_in * s_radial_derivative(t, rho_in)
                    + step_in * step_in / t
                )
                outside = cmath.rect(math.exp(rho_out), theta)
                from_outside = s_t(t, outside) + step_out * outside_radial_derivative(outside)
                worst = max(worst, abs(from_inside - from_outside))
                count += 1
        return worst, 1e-4, f"{count} boundary points, radius offset {BOUNDARY_OFFSET:g}"

    def check_radial_derivative(self) -> CheckOutcome:
        h = 1e-4
        worst = 0.0
        for t, theta, rho_t in self._match_samples():
            rho = 0.5 * rho_t
            upper = s_t(t, cmath.rect(math.exp(rho + h), theta))
            lower = s_t(t, cmath.rect(math.exp(rho - h), theta))
            worst = max(worst, abs((upper - lower) / (2.0 * h) - s_radial_derivative(t, rho)))
        return worst, 1e-5, "d s_t / d rho = 2 rho / t + 1"

    def check_pde_residual(self) -> CheckOutcome:
        worst = 0.0
        off_order = []
        ratios = []
        for t, lam, x in PDE_PANEL:
            coarse, fine, ratio = pde_residual_order(t, lam, x, 1e-3)
            worst = max(worst, coarse)
            if fine <= PDE_FLOOR:
                continue
            ratios.append(ratio)
            if not PDE_ORDER_BAND[0] <= ratio <= PDE_ORDER_BAND[1]:
                off_order.append(f"(t={t}, lambda={lam}, x={x}): ratio {ratio:.2f}")
        if off_order:
            return math.inf, 1e-4, "halving h does not quarter the residual at " + ", ".join(off_order)
        spread = f"ratios {min(ratios):.2f}..{max(ratios):.2f}" if ratios else "all residuals at the floor"
        return worst, 1e-4, f"{len(PDE_PANEL)} points at h=1e-3, {spread}"

    def check_pushforward(self) -> CheckOutcome:
        times = (2.0,) if self.options.quick else (2.0, 7.0)
        worst = max(pushforward_check(t, 257) for t in times)
        return worst, 1e-6, f"t in {times}"

    def check_pushforward_degenerate(self) -> CheckOutcome:
        return pushforward_check(4.0, 513), 1e-5, "t=4, arc closing at pi"

    # -- Monte Carlo -----------------------------------------------------------------

    def check_monte_carlo(self) -> CheckOutcome:
        opts = self.options
        failures = []
        worst_ks = 0.0
        for t in MC_TIMES:
            cfg = SimConfig(
                N=opts.mc_size,
                t=t,
                steps=max(opts.mc_steps, math.ceil(100 * t)),
                seed=opts.seed,
                samples=opts.mc_samples,
            )
            report = compare_to_brown(simulate(cfg, workers=opts.workers), t)
            failures.extend(f"{name}@t={t}" for name, ok in report.passed().items() if not ok)
            worst_ks = max(worst_ks, report.ks_arg, report.ks_shadow)
        detail = "failed: " + ", ".join(failures) if failures else "inside fraction, KS and flatness"
        return (worst_ks if not failures else math.inf), KS_THRESHOLD, detail

    def check_unitary(self) -> CheckOutcome:
        opts = self.options
        cfg = SimConfig(N=opts.unitary_size, t=1.0, steps=256, seed=opts.seed, samples=1, group=Group.U)
        ks = compare_unitary(simulate(cfg, workers=opts.workers), 1.0)
        return ks, KS_THRESHOLD, f"U({opts.unitary_size}) at t=1"

    def check_trace_moment(self) -> CheckOutcome:
        opts = self.options
        cfg = SimConfig(
            N=opts.moment_size, t=1.0, steps=opts.moment_steps, seed=opts.seed, samples=opts.moment_samples
        )
        moment = trace_moment(cfg, workers=opts.workers)
        detail = f"trace(B B*)/N = {moment.mean:.4f} +/- {moment.stderr:.4f} over {moment.samples} samples"
        return moment.sigmas_from(math.e), MOMENT_SIGMAS, detail

    # -- driver ----------------------------------------------------------------------

    def checks(self) -> list[tuple[str, Callable[[], CheckOutcome]]]:
        selected = [
            ("omega anchors", self.check_omega_anchors),
            ("Brown mass normalization", self.check_mass),
            ("nu_t mass normalization", self.check_biane_mass),
            ("density routes agree", self.check_routes),
            ("small/large t asymptotics", self.check_asymptotics),
            ("lifetime identities", self.check_lifetimes),
            ("ODE momentum vs closed form", self.check_ode_momentum),
            ("ODE constants of motion", self.check_ode_invariants),
        ]
        if not self.options.quick:
            selected += [
                ("boundary matching of s_t", self.check_boundary_matching),
                ("radial derivative of s_t", self.check_radial_derivative),
                ("PDE residual", self.check_pde_residual),
            ]
        selected.append(("pushforward identity", self.check_pushforward))
        if not self.options.quick:
            selected += [
                ("pushforward identity at t=4", self.check_pushforward_degenerate),
                ("Monte Carlo GL(N)", self.check_monte_carlo),
                ("Monte Carlo U(N)", self.check_unitary),
                ("GL(N) trace moment", self.check_trace_moment),
            ]
        return selected

    def run(self) -> list[CheckResult]:
        logger.info(f"🔍 Starting {'quick' if self.options.quick else 'full'} verification suite...")
        results = []
        for name, check in self.checks():
            start = time.perf_counter()
            try:
                value, threshold, detail = check()
                passed = bool(value <= threshold)
            except BrownMeasureError as exc:
                value, threshold, detail, passed = math.nan, math.nan, f"{type(exc).__name__}: {exc}", False
            seconds = time.perf_counter() - start
            status = "✅" if passed else "❌"
            logger.info(f"{status} {name}: {value:.3e} (threshold {threshold:.1e}) in {seconds:.2f}s")
            results.append(CheckResult(name, passed, float(value), float(threshold), detail, seconds))
        logger.info(f"✅ Verification completed. Overall status: {overall_status(results)}")
        return results


def run_suite(quick: bool = False, seed: int = 7, workers: int = 1) -> list[CheckResult]:
    return VerificationSuite(SuiteOptions(quick=quick, seed=seed, workers=workers)).run()


def overall_status(results: list[CheckResult]) -> str:
    """PASS when every check passed, FAIL otherwise."""
    failed = [result.name for result in results if not result.passed]
    if not failed:
        return "PASS"
    return "FAIL"
