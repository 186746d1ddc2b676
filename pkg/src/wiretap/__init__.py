"""Secrecy-rate maximizing transmit covariance design for MIMO Gaussian wiretap channels."""

__version__ = "0.1.0"

from ._jit import JIT_ENABLED
from .errors import (
    InvalidConfigError,
    InvalidMatrixError,
    NotPositiveDefiniteError,
    NumericalFailureError,
    WiretapError,
)
from .linalg import (
    expm_skew,
    geig_hpd,
    hermitian_eig,
    logdet_hpd,
    null_space_basis,
    qr_orthonormalize,
)
from .model import (
    ChannelPair,
    EigenFactorization,
    TransmitCovariance,
    channel_from_dict,
    channel_to_dict,
    grad_lambda_logdet,
    grad_unitary,
    hadamard_objective,
    load_channel,
    sample_channel,
    save_channel,
    secrecy_rate,
    secrecy_rate_factors,
    secrecy_rate_reduced,
)
from .potdc import (
    PotdcResult,
    PotdcSettings,
    potdc_optimize_lambda,
    project_capped_simplex,
    solve_linearized_subproblem,
)
from .unitary import UnitaryResult, UnitarySettings, ascend_unitary, riemannian_gradient
from .solver import (
    AlternatingSettings,
    SolverReport,
    TerminationReason,
    assemble_covariance,
    solve,
)
from .baselines import (
    PrecoderKind,
    misome_capacity,
    precode_gsvd,
    precode_isotropic,
    precode_slnr,
    precode_water_filling,
    precode_zero_forcing,
    random_search_oracle,
    water_fill,
)
from .experiment import (
    ExperimentConfig,
    ExperimentResult,
    emit_results,
    render_csv,
    render_json,
    run_experiment,
)

__all__ = [
    "JIT_ENABLED",
    "__version__",
    "WiretapError",
    "InvalidMatrixError",
    "NotPositiveDefiniteError",
    "InvalidConfigError",
    "NumericalFailureError",
    "hermitian_eig",
    "logdet_hpd",
    "geig_hpd",
    "null_space_basis",
    "expm_skew",
    "qr_orthonormalize",
    "ChannelPair",
    "TransmitCovariance",
    "EigenFactorization",
    "sample_channel",
    "secrecy_rate",
    "secrecy_rate_factors",
    "secrecy_rate_reduced",
    "hadamard_objective",
    "grad_unitary",
    "grad_lambda_logdet",
    "channel_to_dict",
    "channel_from_dict",
    "save_channel",
    "load_channel",
    "PotdcSettings",
    "PotdcResult",
    "project_capped_simplex",
    "solve_linearized_subproblem",
    "potdc_optimize_lambda",
    "UnitarySettings",
    "UnitaryResult",
    "riemannian_gradient",
    "ascend_unitary",
    "AlternatingSettings",
    "SolverReport",
    "TerminationReason",
    "solve",
    "assemble_covariance",
    "PrecoderKind",
    "water_fill",
    "precode_water_filling",
    "precode_isotropic",
    "precode_zero_forcing",
    "precode_slnr",
    "precode_gsvd",
    "misome_capacity",
    "random_search_oracle",
    "ExperimentConfig",
    "ExperimentResult",
    "run_experiment",
    "emit_results",
    "render_csv",
    "render_json",
]
