"""linpacket: exact Gaussian wave packets under a time-dependent uniform force.

The closed-form solution is built from a linear invariant of the motion; the
grid engine cross-checks every closed form with a split-step spectral
propagator and a numerical eigenvalue-superposition integrator.
"""

from ._accel import NUMBA_ENABLED
from .errors import (
    CausticReached,
    InternalCheckError,
    LeakingState,
    LinpacketError,
    OutOfTabulatedRange,
    ParseError,
    QuadratureNonConvergence,
    TruncationTooCoarse,
    ValidationError,
)
from .forces import ForceProfile, force_eval
from .grid import (
    GridSpec,
    GridState,
    apply_invariant,
    grid_moments,
    init_from_packet,
    l2_distance,
    propagate,
    raised_cosine_window,
    step,
)
from .invariant import (
    DEFAULT_CAUSTIC_MARGIN,
    InvariantCoeffs,
    PhysicalParams,
    caustic_time,
    coeff_a,
    coeff_b,
    coeff_c,
    coeff_c_quadrature,
    ensure_admissible,
    invariance_residual,
    kernel_c2_over_a2,
    kernel_c_over_a2,
    kernel_inv_a2,
    kernel_quarter_a2,
)
from .packet import (
    MomentSet,
    PacketSpec,
    analytic_moments,
    eigen_residual_phase,
    eigen_solution,
    eigenfunction,
    mean_p,
    mean_x,
    packet_amplitude,
    probability_density,
    sigma_p,
    sigma_x,
    uncertainty_product,
)
from .quadrature import DEFAULT_QUAD, QuadratureConfig, adaptive_simpson_scalar
from .scenario import Scenario, emit_scenario, parse_scenario, parse_scenario_text
from .superpose import WeightFunction, superpose

__version__ = "0.1.0"

__all__ = [
    "NUMBA_ENABLED",
    "LinpacketError", "ValidationError", "ParseError", "OutOfTabulatedRange",
    "QuadratureNonConvergence", "CausticReached", "LeakingState",
    "TruncationTooCoarse", "InternalCheckError",
    "ForceProfile", "force_eval",
    "PhysicalParams", "InvariantCoeffs", "QuadratureConfig", "DEFAULT_QUAD",
    "DEFAULT_CAUSTIC_MARGIN", "caustic_time", "ensure_admissible",
    "coeff_a", "coeff_b", "coeff_c", "coeff_c_quadrature",
    "kernel_inv_a2", "kernel_c_over_a2", "kernel_c2_over_a2", "kernel_quarter_a2",
    "invariance_residual", "adaptive_simpson_scalar",
    "PacketSpec", "MomentSet", "eigenfunction", "eigen_solution",
    "eigen_residual_phase", "packet_amplitude", "probability_density",
    "mean_x", "mean_p", "sigma_x", "sigma_p", "uncertainty_product",
    "analytic_moments",
    "GridSpec", "GridState", "init_from_packet", "step", "propagate",
    "grid_moments", "apply_invariant", "l2_distance", "raised_cosine_window",
    "WeightFunction", "superpose",
    "Scenario", "parse_scenario", "parse_scenario_text", "emit_scenario",
]
