"""Analytic center of the passivity LMIs of continuous- and discrete-time LTI systems."""
__version__ = "0.1.0"

from .bilinear import TransformedModel, cayley_c2d, cayley_d2c, verify_barrier_equivalence, verify_residual_relation
from .center import (
    CenterOptions,
    CenterResult,
    IterationRecord,
    compute_analytic_center,
    init_geometric_mean,
    init_shifted_riccati,
    line_search_newton_alpha,
    newton_direction,
    newton_system,
    scalar_center_reference,
    steepest_ascent_step,
    verify_center_spectrum,
)
from .errors import *  # noqa: F401,F403
from .hermitian import (
    HermitianOperator,
    frobenius_real_inner,
    hermitian_sqrt,
    min_eigenpair,
    min_eigenvalue,
    project_hermitian,
    solve_hermitian_operator,
)
from .io import read_model, write_model
from .lmi import LmiEvaluation, barrier, eval_W, gradient_log_det, lmi_matrix, stationarity_residual
from .model import (
    CONTINUOUS,
    DISCRETE,
    GeneralizedWeight,
    StateSpaceModel,
    is_minimal,
    popov_eval,
    random_passive_model,
    system_pencil_eval,
)
from .radius import (
    RadiusBound,
    perturbation_norm,
    probe_perturbations,
    x_passivity_bound,
    x_passivity_bound_continuous,
    x_passivity_bound_discrete,
)
from .riccati import ExtremalPair, riccati_residual, solve_care_extremal, solve_dare_extremal, solve_extremal
