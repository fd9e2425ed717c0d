"""Error-probability bounds for photonic target detection.

Binary discrimination of a thermal-noise channel against an identity channel
(a perfectly reflecting target), on truncated Fock spaces: exact Helstrom
errors, quantum Chernoff upper bounds and Bhattacharyya-derived lower bounds,
with every closed form cross-validated against a brute-force linear-algebra
oracle.
"""

from .channels import (
    HypothesisPair,
    Scenario,
    depolarizing_pair,
    target_pair_bipartite,
    target_pair_single_mode,
)
from .closed_forms import (
    DepolarizingInput,
    LimitValues,
    NoiseRegime,
    asymptotic_limits,
    bright_noise_spdc_exponent,
    coherent_lower,
    coherent_qcb,
    depolarizing_error,
    noon_lower,
    noon_qcb,
    noon_threshold,
    number_state_error,
    spdc_lower,
    spdc_qcb,
    weak_noise_crossover,
    werner_advantage_threshold,
)
from .errors import (
    ConvergenceError,
    InvalidStateError,
    ParameterDomainError,
    SizeLimitError,
    TruncationError,
)
from .figures import CurveSeries, figure1_series, figure2_series, figure3_series, render_csv
from .fock import (
    DensityOperator,
    FockKet,
    NoiseSpec,
    coherent_ket,
    matrix_power,
    maximally_entangled_qudit,
    maximally_mixed,
    noon_ket,
    number_ket,
    partial_trace,
    spdc_ket,
    tensor,
    thermal_state,
    trace_norm,
    werner_state,
)
from .oracle import (
    BoundKind,
    BoundResult,
    bhattacharyya_lower,
    chernoff_bound,
    helstrom_error,
    pure_pure_error,
    q_s,
)
from .validation import ValidationReport, default_config, run_validation

__version__ = "0.1.0"

__all__ = [
    "BoundKind",
    "BoundResult",
    "ConvergenceError",
    "CurveSeries",
    "DensityOperator",
    "DepolarizingInput",
    "FockKet",
    "HypothesisPair",
    "InvalidStateError",
    "LimitValues",
    "NoiseRegime",
    "NoiseSpec",
    "ParameterDomainError",
    "Scenario",
    "SizeLimitError",
    "TruncationError",
    "ValidationReport",
    "asymptotic_limits",
    "bhattacharyya_lower",
    "bright_noise_spdc_exponent",
    "chernoff_bound",
    "coherent_ket",
    "coherent_lower",
    "coherent_qcb",
    "default_config",
    "depolarizing_error",
    "depolarizing_pair",
    "figure1_series",
    "figure2_series",
    "figure3_series",
    "helstrom_error",
    "matrix_power",
    "maximally_entangled_qudit",
    "maximally_mixed",
    "noon_ket",
    "noon_lower",
    "noon_qcb",
    "noon_threshold",
    "number_ket",
    "number_state_error",
    "partial_trace",
    "pure_pure_error",
    "q_s",
    "render_csv",
    "run_validation",
    "spdc_ket",
    "spdc_lower",
    "spdc_qcb",
    "target_pair_bipartite",
    "target_pair_single_mode",
    "tensor",
    "thermal_state",
    "trace_norm",
    "weak_noise_crossover",
    "werner_advantage_threshold",
    "werner_state",
]
