"""Brown measure density: omega, w_t, W_t and the angular marginal"""

from .angular import (
    CDF_NODES,
    CROSS_CHECK_TOL,
    DensityGrid,
    DensityRoute,
    DensitySample,
    angular_cdf_table,
    angular_marginal,
    boundary_slope,
    brown_density,
    brown_density_sample,
    half_wedge_map,
    phi_derivative,
    radial_profile_mass,
    route_discrepancy,
    tabulate_density,
    total_mass,
    w_of_theta,
    w_tip_limit,
    wedge_integral,
)
from .omega import (
    OmegaParts,
    h_of_r,
    omega,
    omega_on_unit_circle,
    omega_parts,
    omega_unregularized,
)

__all__ = [
    "CDF_NODES",
    "CROSS_CHECK_TOL",
    "DensityGrid",
    "DensityRoute",
    "DensitySample",
    "OmegaParts",
    "angular_cdf_table",
    "angular_marginal",
    "boundary_slope",
    "brown_density",
    "brown_density_sample",
    "h_of_r",
    "half_wedge_map",
    "omega",
    "omega_on_unit_circle",
    "omega_parts",
    "omega_unregularized",
    "phi_derivative",
    "radial_profile_mass",
    "route_discrepancy",
    "tabulate_density",
    "total_mass",
    "w_of_theta",
    "w_tip_limit",
    "wedge_integral",
]
