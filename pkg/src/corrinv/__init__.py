"""corrinv: chemical potential and pair potential from truncated correlation functions."""

__version__ = "0.1.0"

from corrinv.bounds import (
    BoundParams,
    BoundReport,
    a_seq,
    bound_report,
    c_seq,
    ell,
    ell_linearized,
    lambert_w0,
    radius_bound,
    w_scaled_seq,
    w_seq,
)
from corrinv.combinatorics import (
    ColoredGraph,
    OrderedSplit,
    Partition,
    bell_polynomial,
    bicolored_graphs,
    connected_graphs,
    cyclic_permutations,
    ordered_splits,
    set_partitions,
)
from corrinv.config import BoundsConfig, RunConfig, load_bounds_config, load_config
from corrinv.errors import (
    BoundsDomainError,
    ConfigError,
    CorrinvError,
    HardCoreError,
    LimitExceededError,
    ModelNotFoundError,
    OrderBoundError,
    QuadratureError,
)
from corrinv.inversion import (
    SeriesResult,
    exponential_representation,
    h_series,
    janossy,
    log_j2_decomposition,
    mu_series,
    pmf,
    stability_delta,
    u0_correction,
)
from corrinv.models import (
    AssumptionParams,
    CorrelationModel,
    Gaussian,
    determinantal_model,
    kirkwood_model,
    low_activity_model,
    poisson_model,
    tabulated_model,
)
from corrinv.models.assumptions import estimate_assumption_params
from corrinv.omega import f2_family, omega_one, omega_two, reconstruct_check
from corrinv.oracles import (
    kirkwood_omega_one_oracle,
    kirkwood_omega_two_oracle,
    mayer_leading_omega,
    run_oracle_suite,
    truncation_oracle,
)
from corrinv.quadrature import Box, QuadratureSpec, integrate_k, integrate_many
from corrinv.registry import ModelDef, get_model, list_models
from corrinv.ruelle import FiniteFamily, d_reduce, star_exp, star_log, star_product

__all__ = [
    # Algebra
    "FiniteFamily",
    "d_reduce",
    "star_exp",
    "star_log",
    "star_product",
    # Combinatorics
    "ColoredGraph",
    "OrderedSplit",
    "Partition",
    "bell_polynomial",
    "bicolored_graphs",
    "connected_graphs",
    "cyclic_permutations",
    "ordered_splits",
    "set_partitions",
    # Models
    "AssumptionParams",
    "CorrelationModel",
    "Gaussian",
    "ModelDef",
    "determinantal_model",
    "estimate_assumption_params",
    "get_model",
    "kirkwood_model",
    "list_models",
    "low_activity_model",
    "poisson_model",
    "tabulated_model",
    # Omega and series
    "Box",
    "QuadratureSpec",
    "SeriesResult",
    "exponential_representation",
    "f2_family",
    "h_series",
    "integrate_k",
    "integrate_many",
    "janossy",
    "log_j2_decomposition",
    "mu_series",
    "omega_one",
    "omega_two",
    "pmf",
    "reconstruct_check",
    "stability_delta",
    "u0_correction",
    # Bounds
    "BoundParams",
    "BoundReport",
    "a_seq",
    "bound_report",
    "c_seq",
    "ell",
    "ell_linearized",
    "lambert_w0",
    "radius_bound",
    "w_scaled_seq",
    "w_seq",
    # Oracles
    "kirkwood_omega_one_oracle",
    "kirkwood_omega_two_oracle",
    "mayer_leading_omega",
    "run_oracle_suite",
    "truncation_oracle",
    # Config and errors
    "BoundsConfig",
    "BoundsDomainError",
    "ConfigError",
    "CorrinvError",
    "HardCoreError",
    "LimitExceededError",
    "ModelNotFoundError",
    "OrderBoundError",
    "QuadratureError",
    "RunConfig",
    "load_bounds_config",
    "load_config",
]
