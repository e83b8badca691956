"""
Statistical comparison of simulated eigenvalues with the computed Brown measure and nu_t.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional

import numpy as np
import pandas as pd
from scipy import stats

from ..density.angular import CDF_NODES, angular_cdf_table, half_wedge_map
from ..errors import DomainError, EmptyCloudError
from ..region.gobbling import gobbling_time_at, outer_radius, theta_max
from ..unitary_shadow.biane import biane_cdf_table, phi_of_theta
from .sampler import EigenCloud, Group, SimConfig, simulate

logger = logging.getLogger(__name__)

KS_THRESHOLD = 0.05
INSIDE_THRESHOLD = 0.95
TOL_DILATE = 0.05
FLATNESS_BINS = 8
BOOTSTRAP_DRAWS = 999
BAND_LEVEL = 0.99
TABLE_NODES = 2048


def ks_statistic(samples: np.ndarray, cdf: tuple[np.ndarray, np.ndarray]) -> float:
    """Kolmogorov-Smirnov distance between samples and a tabulated CDF."""
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise EmptyCloudError("KS distance of an empty sample")
    grid, values = cdf
    result = stats.kstest(samples, lambda x: np.interp(x, grid, values))
    return float(result.statistic)


def _boundary_tables(t: float, nodes: int = TABLE_NODES) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """theta, phi(theta) and log r_t(theta) on the full wedge, increasing in theta."""
    cutoff, to_theta, _ = half_wedge_map(t)
    theta = to_theta(np.linspace(0.0, 1.0, nodes + 1))
    theta[-1] = cutoff
    phi = np.array([phi_of_theta(t, float(th)) for th in theta])
    log_r = np.zeros_like(theta)
    for k, th in enumerate(theta[:-1] if t <= 4.0 else theta):
        log_r[k] = math.log(outer_radius(t, float(th)))
    full_theta = np.concatenate([-theta[:0:-1], theta])
    full_phi = np.concatenate([-phi[:0:-1], phi])
    full_log_r = np.concatenate([log_r[:0:-1], log_r])
    return full_theta, full_phi, full_log_r


def gobbling_times(eigs: np.ndarray) -> np.ndarray:
    return np.array([gobbling_time_at(abs(z), math.atan2(z.imag, z.real)) for z in eigs])


@dataclass
class FlatnessResult:
    """Chi-square of u = log|lambda| / log r_t(arg lambda) against uniform on [-1, 1]."""

    chi2: float
    band: float
    bins: int
    count: int

    @property
    def passed(self) -> bool:
        return self.chi2 <= self.band


def flatness_statistic(
    eigs: np.ndarray,
    t: float,
    bins: int = FLATNESS_BINS,
    seed: int = 0,
    draws: int = BOOTSTRAP_DRAWS,
    tables: Optional[tuple[np.ndarray, np.ndarray, np.ndarray]] = None,
) -> FlatnessResult:
    """Histogram flatness of log|lambda| within each radial segment of Sigma_t.

    The Brown measure is uniform in rho = log|lambda| along every ray, so u is
    uniform on [-1, 1]. The band is the BAND_LEVEL quantile of the statistic under
    multinomial resampling from the uniform law, drawn from a seeded generator.
    """
    theta_tab, _, log_r_tab = tables if tables is not None else _boundary_tables(t)
    eigs = np.asarray(eigs)
    theta = np.angle(eigs)
    log_r = np.interp(theta, theta_tab, log_r_tab)
    with np.errstate(divide="ignore", invalid="ignore"):
        u = np.log(np.abs(eigs)) / log_r
    u = u[np.isfinite(u) & (np.abs(u) <= 1.0)]
    if u.size == 0:
        raise EmptyCloudError("no eigenvalues inside Sigma_t for the flatness statistic")
    counts, _ = np.histogram(u, bins=bins, range=(-1.0, 1.0))
    expected = u.size / bins
    chi2 = float(np.sum((counts - expected) ** 2) / expected)
    rng = np.random.default_rng(np.random.SeedSequence([seed, bins, u.size]))
    null = rng.multinomial(u.size, np.full(bins, 1.0 / bins), size=draws)
    null_chi2 = np.sum((null - expected) ** 2, axis=1) / expected
    band = float(np.quantile(null_chi2, BAND_LEVEL))
    return FlatnessResult(chi2=chi2, band=band, bins=bins, count=int(u.size))


@dataclass
class ComparisonReport:
    """Simulation versus theory at one t."""

    t: float
    count: int
    inside_fraction: float
    ks_arg: float
    ks_shadow: float
    n_outside: int
    n_out_of_wedge: int
    flatness_chi2: float
    flatness_band: float
    unit_disk_fraction: float
    mean_log_abs: float
    config: dict[str, Any] = field(default_factory=dict)

    def passed(self) -> dict[str, bool]:
        return {
            "inside_fraction": self.inside_fraction >= INSIDE_THRESHOLD,
            "ks_arg": self.ks_arg <= KS_THRESHOLD,
            "ks_shadow": self.ks_shadow <= KS_THRESHOLD,
            "flatness": self.flatness_chi2 <= self.flatness_band,
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "t": self.t,
            "count": self.count,
            "inside_fraction": self.inside_fraction,
            "ks_arg": self.ks_arg,
            "ks_shadow": self.ks_shadow,
            "n_outside": self.n_outside,
            "n_out_of_wedge": self.n_out_of_wedge,
            "flatness_chi2": self.flatness_chi2,
            "flatness_band": self.flatness_band,
            "unit_disk_fraction": self.unit_disk_fraction,
            "mean_log_abs": self.mean_log_abs,
            "config": self.config,
        }


def _require_cloud(eigs: np.ndarray) -> None:
    if eigs.size == 0:
        raise EmptyCloudError("comparison requested on an empty eigenvalue cloud")


def compare_to_brown(cloud: EigenCloud, t: float, tol_dilate: float = TOL_DILATE) -> ComparisonReport:
    """Inside fraction, arg-KS, shadow-KS, flatness and half-mass diagnostics for a GL cloud.

    Eigenvalues outside the closed domain are projected radially onto its
    boundary (their angle is kept, clipped to the wedge) before the shadow map
    is applied, and counted in n_outside.
    """
    eigs = np.asarray(cloud.eigenvalues)
    _require_cloud(eigs)
    if not math.isclose(cloud.provenance.t, t, rel_tol=1e-12, abs_tol=1e-12):
        raise DomainError(f"cloud was simulated at t={cloud.provenance.t}, not t={t}")

    times = gobbling_times(eigs)
    inside_fraction = float(np.mean(times < t * (1.0 + tol_dilate)))
    n_outside = int(np.sum(times > t))

    theta = np.angle(eigs)
    ks_arg = ks_statistic(theta, angular_cdf_table(t, CDF_NODES))

    cutoff = theta_max(t)
    clipped = np.clip(theta, -cutoff, cutoff)
    n_out_of_wedge = int(np.sum(np.abs(theta) > cutoff)) if t <= 4.0 else 0
    if n_out_of_wedge:
        logger.warning(f"⚠️  {n_out_of_wedge} eigenvalues lie outside the wedge |theta| < {cutoff:.6f}")
    tables = _boundary_tables(t)
    theta_tab, phi_tab, _ = tables
    phi = np.interp(clipped, theta_tab, phi_tab)
    ks_shadow = ks_statistic(phi, biane_cdf_table(t, CDF_NODES))

    flat = flatness_statistic(eigs, t, seed=cloud.provenance.seed, tables=tables)
    log_abs = np.log(np.abs(eigs))
    report = ComparisonReport(
        t=t,
        count=int(eigs.size),
        inside_fraction=inside_fraction,
        ks_arg=ks_arg,
        ks_shadow=ks_shadow,
        n_outside=n_outside,
        n_out_of_wedge=n_out_of_wedge,
        flatness_chi2=flat.chi2,
        flatness_band=flat.band,
        unit_disk_fraction=float(np.mean(log_abs < 0.0)),
        mean_log_abs=float(np.mean(log_abs)),
        config=cloud.provenance.to_dict(),
    )
    logger.info(
        f"📊 t={t}: inside={inside_fraction:.4f} ks_arg={ks_arg:.4f} ks_shadow={ks_shadow:.4f}"
    )
    return report


def compare_unitary(cloud: EigenCloud, t: float) -> float:
    """KS distance between eigen-angles of a U(N) cloud and the CDF of nu_t."""
    eigs = np.asarray(cloud.eigenvalues)
    _require_cloud(eigs)
    return ks_statistic(np.angle(eigs), biane_cdf_table(t, CDF_NODES))


def convergence_trend(
    t: float,
    sizes: Iterable[int],
    repetitions: int = 8,
    seed: int = 0,
    steps: Optional[int] = None,
    workers: int = 1,
) -> pd.DataFrame:
    """Mean arg-KS distance and its standard error for each matrix size."""
    steps = steps if steps is not None else max(1, math.ceil(100 * t))
    table = angular_cdf_table(t, CDF_NODES)
    rows = []
    for size in sizes:
        distances = []
        for rep in range(repetitions):
            run_seed = int(np.random.SeedSequence([seed, size, rep]).generate_state(1, np.uint64)[0])
            cfg = SimConfig(N=size, t=t, steps=steps, seed=run_seed, samples=1, group=Group.GL)
            cloud = simulate(cfg, workers=workers)
            distances.append(ks_statistic(np.angle(cloud.eigenvalues), table))
        values = np.array(distances)
        stderr = float(values.std(ddof=1) / math.sqrt(values.size)) if values.size > 1 else 0.0
        rows.append({"N": size, "mean_ks": float(values.mean()), "stderr": stderr})
        logger.debug(f"N={size}: mean arg-KS {values.mean():.4f} +/- {stderr:.4f}")
    return pd.DataFrame(rows)


def trend_is_non_increasing(frame: pd.DataFrame, sigmas: float = 3.0) -> bool:
    """Each mean is at most the previous one plus `sigmas` combined standard errors."""
    means = frame["mean_ks"].to_numpy()
    errors = frame["stderr"].to_numpy()
    for k in range(1, means.size):
        allowance = sigmas * math.hypot(errors[k], errors[k - 1])
        if means[k] > means[k - 1] + allowance:
            return False
    return True
