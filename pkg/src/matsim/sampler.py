"""
Monte Carlo Brownian motion on GL(N; C) and U(N).

Both processes are driven by Euler-Maruyama steps of the Ito equations

    dB = B dZ                     (GL: Z has iid complex Gaussian entries, variance t/N)
    dU = i U dX - (1/2) U dt      (U: X is a GUE Brownian motion)

Each sample uses its own generator spawned from one master seed, so the
eigenvalue cloud does not depend on how samples are distributed over threads.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Optional

import numpy as np
import pandas as pd
from scipy import linalg

from ..errors import ConfigError, EigenSolverError, SimulationError

logger = logging.getLogger(__name__)

STEPS_PER_UNIT_TIME = 100
PROJECTION_EVERY = 16
BACKWARD_ERROR_TOL = 1e-8
_FINITE_CHECK_EVERY = 16
_SEED_LIMIT = 2**64


class Group(str, Enum):
    """Matrix group of the simulated Brownian motion."""

    GL = "GL"
    U = "U"


@dataclass(frozen=True)
class SimConfig:
    """Parameters of one Monte Carlo run."""

    N: int
    t: float
    steps: int
    seed: int = 0
    samples: int = 1
    group: Group = Group.GL
    projection_every: int = PROJECTION_EVERY

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "group", Group(self.group))
        except ValueError as exc:
            raise ConfigError(f"group must be GL or U, got {self.group!r}") from exc
        if self.N < 2:
            raise ConfigError(f"matrix size N must be at least 2, got N={self.N}")
        if not math.isfinite(self.t) or self.t < 0.0:
            raise ConfigError(f"t must be non-negative, got t={self.t!r}")
        minimum = max(1, math.ceil(STEPS_PER_UNIT_TIME * self.t))
        if self.steps < minimum:
            raise ConfigError(f"steps={self.steps} is too coarse for t={self.t}; need at least {minimum}")
        if self.samples < 1:
            raise ConfigError(f"samples must be positive, got {self.samples}")
        if not 0 <= self.seed < _SEED_LIMIT:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.projection_every < 0:
            raise ConfigError(f"projection_every must be non-negative, got {self.projection_every}")

    @property
    def dt(self) -> float:
        return self.t / self.steps

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["group"] = self.group.value
        return data


def sample_streams(seed: int, samples: int) -> list[np.random.Generator]:
    """One independent generator per sample index, spawned from the master seed."""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(samples)]


def _complex_gaussian(rng: np.random.Generator, n: int, variance: float) -> np.ndarray:
    """n x n iid complex Gaussians with E|g|^2 = variance."""
    scale = math.sqrt(0.5 * variance)
    return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


def _check_finite(m: np.ndarray, step: int) -> None:
    if not np.all(np.isfinite(m)):
        raise SimulationError(f"matrix became non-finite after {step} steps")


def simulate_gl(cfg: SimConfig, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """One realization of B_t: B <- B (I + dZ), dZ complex Gaussian with E|dZ_ij|^2 = dt / N."""
    rng = rng if rng is not None else sample_streams(cfg.seed, 1)[0]
    n = cfg.N
    b = np.eye(n, dtype=np.complex128)
    if cfg.t == 0.0:
        return b
    variance = cfg.dt / n
    for step in range(1, cfg.steps + 1):
        b += b @ _complex_gaussian(rng, n, variance)
        if step % _FINITE_CHECK_EVERY == 0:
            _check_finite(b, step)
    _check_finite(b, cfg.steps)
    return b


def _project_unitary(u: np.ndarray) -> np.ndarray:
    unitary, _ = linalg.polar(u)
    return unitary


def simulate_u(cfg: SimConfig, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """One realization of U_t: U <- U (I + i dX - dt/2), dX a GUE increment."""
    rng = rng if rng is not None else sample_streams(cfg.seed, 1)[0]
    n = cfg.N
    u = np.eye(n, dtype=np.complex128)
    if cfg.t == 0.0:
        return u
    dt = cfg.dt
    for step in range(1, cfg.steps + 1):
        a = _complex_gaussian(rng, n, dt / n)
        dx = (a + a.conj().T) / math.sqrt(2.0)
        u = u + 1j * (u @ dx) - 0.5 * dt * u
        if cfg.projection_every and step % cfg.projection_every == 0:
            u = _project_unitary(u)
    _check_finite(u, cfg.steps)
    if cfg.projection_every:
        u = _project_unitary(u)
    return u


def unitarity_defect(u: np.ndarray) -> float:
    """||U* U - I||_F."""
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]), "fro"))


def eigenvalues(m: np.ndarray, verify: bool = False) -> np.ndarray:
    """All eigenvalues of a general complex matrix (LAPACK geev).

    With verify=True eigenvectors are computed too and each pair must satisfy
    ||A v - lambda v|| <= 1e-8 ||A|| for unit v.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise EigenSolverError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise EigenSolverError("matrix has non-finite entries")
    try:
        if not verify:
            return linalg.eigvals(m, check_finite=False)
        values, vectors = linalg.eig(m, check_finite=False)
    except linalg.LinAlgError as exc:
        raise EigenSolverError(f"QR iteration did not converge: {exc}") from exc
    vectors = vectors / np.linalg.norm(vectors, axis=0)
    residual = np.linalg.norm(m @ vectors - vectors * values, axis=0)
    bound = BACKWARD_ERROR_TOL * max(float(np.linalg.norm(m, "fro")), np.finfo(float).tiny)
    worst = float(residual.max()) if residual.size else 0.0
    if worst > bound:
        raise EigenSolverError(f"eigenpair backward error {worst:.3e} exceeds {bound:.3e}")
    return values


@dataclass
class EigenCloud:
    """Eigenvalues of all samples, concatenated in sample order."""

    eigenvalues: np.ndarray
    provenance: SimConfig
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.eigenvalues = np.asarray(self.eigenvalues, dtype=np.complex128)
        if np.any(np.isnan(self.eigenvalues)):
            raise SimulationError("eigenvalue cloud contains NaN entries")

    def __len__(self) -> int:
        return int(self.eigenvalues.size)

    @property
    def t(self) -> float:
        return self.provenance.t

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"re": self.eigenvalues.real, "im": self.eigenvalues.imag})

    def to_dict(self) -> dict[str, Any]:
        return {"count": len(self), **self.provenance.to_dict(), **self.metadata}


def _one_sample(cfg: SimConfig, rng: np.random.Generator) -> np.ndarray:
    if cfg.group is Group.GL:
        matrix = simulate_gl(cfg, rng)
    else:
        matrix = simulate_u(cfg, rng)
    return eigenvalues(matrix)


def simulate(cfg: SimConfig, workers: int = 1) -> EigenCloud:
    """Run every sample of cfg and collect the eigenvalues in sample order."""
    streams = sample_streams(cfg.seed, cfg.samples)
    logger.info(
        f"🎲 Simulating {cfg.samples} x {cfg.group.value}({cfg.N}) to t={cfg.t} in {cfg.steps} steps"
    )
    if workers <= 1:
        parts = [_one_sample(cfg, rng) for rng in streams]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda rng: _one_sample(cfg, rng), streams))
    cloud = EigenCloud(eigenvalues=np.concatenate(parts), provenance=cfg)
    if len(cloud) != cfg.N * cfg.samples:
        raise SimulationError(f"expected {cfg.N * cfg.samples} eigenvalues, got {len(cloud)}")
    logger.debug(f"Collected {len(cloud)} eigenvalues")
    return cloud


@dataclass(frozen=True)
class TraceMoment:
    """Sample mean and standard error of trace(B B*) / N."""

    mean: float
    stderr: float
    samples: int

    def euler_expectation(self, cfg: SimConfig) -> float:
        """Exact mean of the discretized process, (1 + dt)^steps."""
        return (1.0 + cfg.dt) ** cfg.steps

    def sigmas_from(self, target: float) -> float:
        if self.stderr == 0.0:
            return 0.0 if self.mean == target else math.inf
        return abs(self.mean - target) / self.stderr


def trace_moment(cfg: SimConfig, workers: int = 1) -> TraceMoment:
    """Monte Carlo estimate of E[trace(B_t B_t*)] / N, whose limit is e^t."""
    if cfg.group is not Group.GL:
        raise ConfigError("trace moment is defined for the GL(N) motion only")
    if cfg.samples < 2:
        raise ConfigError(f"a standard error needs at least 2 samples, got {cfg.samples}")

    def one(rng: np.random.Generator) -> float:
        b = simulate_gl(cfg, rng)
        return float(np.vdot(b, b).real) / cfg.N

    streams = sample_streams(cfg.seed, cfg.samples)
    if workers <= 1:
        values = np.array([one(rng) for rng in streams])
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = np.array(list(pool.map(one, streams)))
    moment = TraceMoment(
        mean=float(values.mean()),
        stderr=float(values.std(ddof=1) / math.sqrt(values.size)),
        samples=int(values.size),
    )
    logger.debug(f"trace moment at t={cfg.t}: {moment.mean:.5f} +/- {moment.stderr:.5f}")
    return moment
