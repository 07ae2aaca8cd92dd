"""Simulator and analytic toolkit for Ramsey interferometry with squeezed light."""

from .analytic import (
    MomentClosedForms,
    coherent_pe,
    coherent_pee,
    coherent_pee_expanded,
    moment_closed_forms,
    squeezed_pe,
    squeezed_pee,
    squeezed_pee_factored,
    visibility,
)
from .errors import (
    AccuracyError,
    BudgetExceeded,
    CutoffTooSmall,
    InvalidParam,
    SqRamseyError,
)
from .fock import (
    BALANCED,
    BeamSplitterAngle,
    SqueezeParams,
    TwoModeState,
    apply_beam_splitter,
    balanced_split_factorization,
    coherent_min_cutoff,
    coherent_product_state,
    fidelity,
    moment_adequate_cutoff,
    normally_ordered_moment,
    oracle_unitary,
    photon_number_marginal,
    photon_parity,
    require_squeeze_cutoff,
    squeezed_vacuum_product,
    tmsv_min_cutoff,
    total_number_distribution,
    two_mode_squeezed_vacuum,
    vacuum_state,
)
from .ramsey import (
    ExcitationResult,
    PerturbativeRegimeWarning,
    RamseyConfig,
    clamp_diagnostics,
    double_excitation_prob,
    envelope,
    excitation_fluctuation,
    excitation_result,
    joint_excitation_moments,
    joint_moment_value,
    single_excitation_prob,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "BALANCED",
    "BeamSplitterAngle",
    "BudgetExceeded",
    "CutoffTooSmall",
    "ExcitationResult",
    "InvalidParam",
    "MomentClosedForms",
    "PerturbativeRegimeWarning",
    "RamseyConfig",
    "SqRamseyError",
    "SqueezeParams",
    "TwoModeState",
    "apply_beam_splitter",
    "balanced_split_factorization",
    "clamp_diagnostics",
    "coherent_min_cutoff",
    "coherent_pe",
    "coherent_pee",
    "coherent_pee_expanded",
    "coherent_product_state",
    "double_excitation_prob",
    "envelope",
    "excitation_fluctuation",
    "excitation_result",
    "fidelity",
    "joint_excitation_moments",
    "joint_moment_value",
    "moment_adequate_cutoff",
    "moment_closed_forms",
    "normally_ordered_moment",
    "oracle_unitary",
    "photon_number_marginal",
    "photon_parity",
    "require_squeeze_cutoff",
    "single_excitation_prob",
    "squeezed_pe",
    "squeezed_pee",
    "squeezed_pee_factored",
    "squeezed_vacuum_product",
    "tmsv_min_cutoff",
    "total_number_distribution",
    "two_mode_squeezed_vacuum",
    "vacuum_state",
    "visibility",
    "__version__",
]
