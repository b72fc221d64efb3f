"""Modified error function of a conductivity-slope parameter.

The modified error function Phi_delta is the solution of

    [(1 + delta*y) y']' + 2x y' = 0,   y(0) = 0,  y(inf) = 1,

which reduces to the classical error function at delta = 0. This package
computes it three independent ways (fixed-point iteration of its integral
operator, shooting on the initial slope, and power-series partial sums in
delta), measures the errors between them, and verifies the qualitative
properties the solution is known to satisfy for small positive delta.
"""

from .analysis import (
    CheckResult,
    ErrorReport,
    LipschitzResult,
    PropertyReport,
    check_properties,
    discrete_error,
    error_sweep,
    lipschitz_check,
    ode_residual,
    reference_solution,
    run_suites,
)
from .exceptions import (
    BracketError,
    ConvergenceError,
    DeltaRangeError,
    ModerfError,
    QuadratureError,
    SingularOdeError,
)
from .grid import GridFunction, grid_nodes
from .picard import (
    PicardConfig,
    apply_tau,
    contraction_constant,
    erf_grid,
    inverse_normalization,
    lipschitz_constant,
    solve_delta0,
    solve_fixed_point,
)
from .series import (
    ApproxOrder,
    DeltaParam,
    coefficient_grids,
    g2,
    phi0,
    phi1,
    phi2,
    psi,
    psi_grid,
)
from .shooting import ShootingConfig, integrate_ivp, matching_slope, solve_bvp
from .specfun import (
    QuadratureSpec,
    adaptive_quad,
    dawson,
    erf,
    erfc,
    erfc_scaled,
    erfi,
    integral_erfc_exp,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxOrder",
    "BracketError",
    "CheckResult",
    "ConvergenceError",
    "DeltaParam",
    "DeltaRangeError",
    "ErrorReport",
    "GridFunction",
    "LipschitzResult",
    "ModerfError",
    "PicardConfig",
    "PropertyReport",
    "QuadratureError",
    "QuadratureSpec",
    "ShootingConfig",
    "SingularOdeError",
    "adaptive_quad",
    "apply_tau",
    "check_properties",
    "coefficient_grids",
    "contraction_constant",
    "dawson",
    "discrete_error",
    "erf",
    "erf_grid",
    "erfc",
    "erfc_scaled",
    "erfi",
    "error_sweep",
    "g2",
    "grid_nodes",
    "integral_erfc_exp",
    "integrate_ivp",
    "inverse_normalization",
    "lipschitz_check",
    "lipschitz_constant",
    "matching_slope",
    "ode_residual",
    "phi0",
    "phi1",
    "phi2",
    "psi",
    "psi_grid",
    "reference_solution",
    "run_suites",
    "solve_bvp",
    "solve_delta0",
    "solve_fixed_point",
    "__version__",
]
