"""Monte Carlo matrix Brownian motions and their comparison with theory"""

from .compare import (
    KS_THRESHOLD,
    ComparisonReport,
    FlatnessResult,
    compare_to_brown,
    compare_unitary,
    convergence_trend,
    flatness_statistic,
    gobbling_times,
    ks_statistic,
    trend_is_non_increasing,
)
from .sampler import (
    EigenCloud,
    Group,
    SimConfig,
    TraceMoment,
    eigenvalues,
    sample_streams,
    simulate,
    simulate_gl,
    simulate_u,
    trace_moment,
    unitarity_defect,
)

__all__ = [
    "KS_THRESHOLD",
    "ComparisonReport",
    "EigenCloud",
    "FlatnessResult",
    "Group",
    "SimConfig",
    "TraceMoment",
    "compare_to_brown",
    "compare_unitary",
    "convergence_trend",
    "eigenvalues",
    "flatness_statistic",
    "gobbling_times",
    "ks_statistic",
    "sample_streams",
    "simulate",
    "simulate_gl",
    "simulate_u",
    "trace_moment",
    "trend_is_non_increasing",
    "unitarity_defect",
]
