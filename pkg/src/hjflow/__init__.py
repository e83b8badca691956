"""Hamilton-Jacobi characteristics for the regularized log-determinant"""

from .closed_form import (
    even_cosh_sinc,
    g_derivative,
    g_of_delta,
    lambda_closed_form,
    lambda_modulus_sq,
    lifetime_momentum_limit,
    log_lambda_at_lifetime,
    log_lambda_closed_form,
    px_closed_form,
    q_analytic,
    radial_momentum,
    t_star,
    t_star_from,
    x_closed_form,
    z_closed_form,
)
from .hamiltonian import HJConstants, HJState, hamilton_rhs, hamiltonian, init_state, rescale
from .integrator import RK4, Trajectory, integrate, integrate_batch, integrate_from
from .surjectivity import inverse_lambda_t, lambda_t_map, x0_for_lifetime
from .value import (
    ChartPoint,
    S_value,
    chart_point,
    hj_value_at_lifetime,
    hj_value_S,
    outside_radial_derivative,
    outside_theta_derivative,
    pde_residual,
    pde_residual_order,
    s_radial_derivative,
    s_t,
    s_theta_derivative,
)

__all__ = [
    "ChartPoint",
    "HJConstants",
    "HJState",
    "RK4",
    "S_value",
    "Trajectory",
    "chart_point",
    "even_cosh_sinc",
    "g_derivative",
    "g_of_delta",
    "hamilton_rhs",
    "hamiltonian",
    "hj_value_S",
    "hj_value_at_lifetime",
    "init_state",
    "integrate",
    "integrate_batch",
    "integrate_from",
    "inverse_lambda_t",
    "lambda_closed_form",
    "lambda_modulus_sq",
    "lambda_t_map",
    "lifetime_momentum_limit",
    "log_lambda_at_lifetime",
    "log_lambda_closed_form",
    "outside_radial_derivative",
    "outside_theta_derivative",
    "pde_residual",
    "pde_residual_order",
    "px_closed_form",
    "q_analytic",
    "radial_momentum",
    "rescale",
    "s_radial_derivative",
    "s_t",
    "s_theta_derivative",
    "t_star",
    "t_star_from",
    "x0_for_lifetime",
    "x_closed_form",
    "z_closed_form",
]
