"""The map f_t, Biane's measure and the shadow map Phi_t"""

from .biane import (
    ShadowMap,
    biane_cdf_table,
    biane_density,
    biane_density_forms,
    biane_mass,
    biane_table,
    build_shadow_map,
    chi_boundary,
    f_t,
    kappa,
    log_abs_f_t,
    phi_max,
    phi_of_theta,
    pushforward_check,
    quantile_consistency,
    shadow_map,
    theta_of_phi,
)

__all__ = [
    "ShadowMap",
    "biane_cdf_table",
    "biane_density",
    "biane_density_forms",
    "biane_mass",
    "biane_table",
    "build_shadow_map",
    "chi_boundary",
    "f_t",
    "kappa",
    "log_abs_f_t",
    "phi_max",
    "phi_of_theta",
    "pushforward_check",
    "quantile_consistency",
    "shadow_map",
    "theta_of_phi",
]
