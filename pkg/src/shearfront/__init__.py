"""Front speeds for reaction-diffusion equations in strong shear flows.

The package computes unique/minimal traveling-front speeds c*(A q, f) for
shear flows of amplitude A, verifies that c*/A approaches a finite limit
as A grows, and cross-validates that limit through independent routes:
large-amplitude continuation with Richardson extrapolation, the cutoff
limit of ignition speeds for KPP reactions, and a constrained Rayleigh
quotient formula evaluated by a Lagrange-dual eigenvalue sweep.
"""

from .errors import ConfigError, EigenError, ShearFrontError, SolveError
from .flows import (
    FlowProfile,
    builtin_flow,
    check_nondegeneracy,
    cosine_profile,
    normalize_flow,
    two_mode_profile,
    zero_profile,
)
from .front_solver import (
    BarrierReport,
    FrontSolution,
    IdentityReport,
    SolveOptions,
    SpeedCurve,
    SweepEntry,
    check_exponential_barrier,
    check_integral_identities,
    continuation_in_A,
    solve_front_scaled,
)
from .grids import CylinderGrid, TorusGrid
from .limits import (
    GammaStarEstimate,
    certificate_upper_bound,
    gamma_star_by_cutoff,
    gamma_star_by_viscosity,
    limit_identity_check,
)
from .oned import front_speed_1d
from .reactions import Reaction, ignition_reaction, kpp_reaction, make_cutoff
from .spectral import (
    EigenResult,
    decay_rate,
    kpp_limit_speed,
    kpp_minimal_speed,
    mu_of_lambda,
    principal_eigpair,
    small_amplitude_slope,
)

__version__ = "0.1.0"

# bump when numerical algorithms change in ways that invalidate cached results
ALGO_VERSION = 1

__all__ = [
    "ALGO_VERSION",
    "BarrierReport",
    "ConfigError",
    "CylinderGrid",
    "EigenError",
    "EigenResult",
    "FlowProfile",
    "FrontSolution",
    "GammaStarEstimate",
    "IdentityReport",
    "Reaction",
    "ShearFrontError",
    "SolveError",
    "SolveOptions",
    "SpeedCurve",
    "SweepEntry",
    "TorusGrid",
    "builtin_flow",
    "certificate_upper_bound",
    "check_exponential_barrier",
    "check_integral_identities",
    "check_nondegeneracy",
    "continuation_in_A",
    "cosine_profile",
    "decay_rate",
    "front_speed_1d",
    "gamma_star_by_cutoff",
    "gamma_star_by_viscosity",
    "ignition_reaction",
    "kpp_limit_speed",
    "kpp_minimal_speed",
    "kpp_reaction",
    "limit_identity_check",
    "make_cutoff",
    "mu_of_lambda",
    "normalize_flow",
    "principal_eigpair",
    "small_amplitude_slope",
    "solve_front_scaled",
    "two_mode_profile",
    "zero_profile",
]
