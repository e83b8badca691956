"""Geometry of the domain Sigma_t"""

from .boundary import (
    RegionBoundary,
    annulus_estimate,
    disk_estimate,
    sample_boundary,
    theta_grid,
)
from .gobbling import (
    BAND_TOL,
    ROOT_TOL,
    Membership,
    PolarPoint,
    chord_squared,
    contains,
    gobbling_time,
    gobbling_time_at,
    gobbling_time_dr,
    gobbling_time_dr_at,
    gobbling_time_dtheta_at,
    in_wedge,
    inner_radius,
    log_coordinates,
    normalize_angle,
    outer_radius,
    theta_max,
)

__all__ = [
    "BAND_TOL",
    "ROOT_TOL",
    "Membership",
    "PolarPoint",
    "RegionBoundary",
    "annulus_estimate",
    "chord_squared",
    "contains",
    "disk_estimate",
    "gobbling_time",
    "gobbling_time_at",
    "gobbling_time_dr",
    "gobbling_time_dr_at",
    "gobbling_time_dtheta_at",
    "in_wedge",
    "inner_radius",
    "log_coordinates",
    "normalize_angle",
    "outer_radius",
    "sample_boundary",
    "theta_grid",
    "theta_max",
]
