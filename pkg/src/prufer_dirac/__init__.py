"""Radial Dirac equation in a repulsive Coulomb field, solved through the Pruefer phase."""

__version__ = "0.1.0"

from .analytic import RadialPair, analytic_phase, analytic_phase_curve, coulomb_continuum
from .dirac import (
    BoundaryKind,
    PhaseState,
    RadialSolution,
    dirac_rhs,
    integrate_inward,
    lnp_rhs,
    match_normalization,
    pruefer_rhs,
    radial_density,
    reconstruct,
    solve_new_solution,
    solve_reference,
)
from .effective import Branch, fit_local_exponent, schr_from_dirac, schr_residual, u_eff_f, u_eff_g
from .errors import (
    DomainError,
    ExistenceError,
    FitError,
    IntegrationError,
    ParameterError,
    PoleError,
    PrecisionLossError,
    PruferDiracError,
    ToleranceError,
)
from .integrate import IvpResult, Status, Tolerances, integrate_ivp
from .model import ALPHA_FS, DerivedQuantities, PhysicalParams, classical_radius_natural, derive
from .portrait import Kind, SingularPoint, classify, general_solution_near_zero, singular_points, trace_portrait
from .specfun import kummer_1f1, log_gamma
