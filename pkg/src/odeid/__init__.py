"""Identifiability analysis of linear ODE systems from a single trajectory.

Decide whether the system matrix of Dx = Ax is recoverable from one observed
solution, construct the full class of indistinguishable systems when it is
not, estimate A from noisy samples with simple or spline two-stage methods,
and score practical identifiability four ways (ICIS, Stanhope's kappa, SCN,
PIS).
"""

from . import errors
from .dynamics import Observations, TimeGrid, Trajectory, add_noise, gram, solve
from .harness import (
    RocResult,
    SimConfig,
    expected_min_halfnormal,
    matrix_expectation_test,
    roc_auc,
    run_dimension_scaling,
    run_sim1,
    run_sim2,
    spearman,
    weibull_limit_test,
)
from .identcore import (
    AffinePrior,
    BlockCoefficients,
    IdentVerdict,
    UnidentifiableClass,
    augment_inhomogeneous,
    block_coefficients,
    class_member,
    class_member_from_block,
    entry_prior,
    is_identifiable,
    prior_compatibility,
    repeated_eigen_class,
    unidentifiable_class,
)
from .randgen import SeededRng, ginoe, goe, haar_orthogonal, sim2_pair, uniform_sphere
from .realjordan import (
    EigenBlock,
    RealJordanForm,
    invariant_subspace_basis,
    min_eigen_gap,
    real_jordan,
)
from .scores import IdentReport, icis_score, ident_report, pis, scn, stanhope_kappa, w_function
from .twostage import (
    EstimateReport,
    SmootherOperators,
    fitted_curves,
    ree,
    simple_operators,
    spline_operators,
    two_stage_estimate,
)

__version__ = "0.1.0"

__all__ = [
    "AffinePrior",
    "BlockCoefficients",
    "EigenBlock",
    "EstimateReport",
    "IdentReport",
    "IdentVerdict",
    "Observations",
    "RealJordanForm",
    "RocResult",
    "SeededRng",
    "SimConfig",
    "SmootherOperators",
    "TimeGrid",
    "Trajectory",
    "UnidentifiableClass",
    "add_noise",
    "augment_inhomogeneous",
    "block_coefficients",
    "class_member",
    "class_member_from_block",
    "entry_prior",
    "errors",
    "expected_min_halfnormal",
    "fitted_curves",
    "ginoe",
    "goe",
    "gram",
    "haar_orthogonal",
    "icis_score",
    "ident_report",
    "invariant_subspace_basis",
    "is_identifiable",
    "matrix_expectation_test",
    "min_eigen_gap",
    "pis",
    "prior_compatibility",
    "real_jordan",
    "ree",
    "repeated_eigen_class",
    "roc_auc",
    "run_dimension_scaling",
    "run_sim1",
    "run_sim2",
    "scn",
    "sim2_pair",
    "simple_operators",
    "solve",
    "spearman",
    "spline_operators",
    "stanhope_kappa",
    "two_stage_estimate",
    "unidentifiable_class",
    "uniform_sphere",
    "w_function",
    "weibull_limit_test",
]
