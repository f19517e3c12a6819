"""Truncated Fock-space states, displacement and metrics."""

from .states import (
    FockDensityMatrix,
    coherent_amplitudes,
    coherent_state,
    fock_state,
    cat_state,
    thermal_state,
)
from .displacement import (
    displacement_matrix,
    displacement_matrix_expm,
    displace_state,
    resolved_columns,
    unitarity_deviation,
)
from .metrics import (
    StateDiagnostics,
    trace_distance,
    mean_photon,
    purity,
    validate_state,
    check_state,
)
from .storage import save_state, load_state

__all__ = [
    "FockDensityMatrix",
    "coherent_amplitudes",
    "coherent_state",
    "fock_state",
    "cat_state",
    "thermal_state",
    "displacement_matrix",
    "displacement_matrix_expm",
    "displace_state",
    "resolved_columns",
    "unitarity_deviation",
    "StateDiagnostics",
    "trace_distance",
    "mean_photon",
    "purity",
    "validate_state",
    "check_state",
    "save_state",
    "load_state",
]
