"""Quasiprobability reconstruction from decayed photon statistics."""

from .distributions import PhotonDistribution, evolved_diagonal, transfer_matrix
from .weights import (
    QuasiprobSpec,
    WeightValue,
    order_ratio,
    weight_chi,
    weighted_sum,
    weighted_terms,
)
from .results import (
    ReconstructionPoint,
    ReconstructionResult,
    write_result_table,
    write_oracle_table,
    write_sidecar,
    write_table,
)
from .pipeline import (
    phase_space_grid,
    quasiprob_direct,
    reconstruct_point,
    scan_grid,
    direct_grid,
)
from .identities import binomial_series_identity_check

__all__ = [
    "PhotonDistribution",
    "evolved_diagonal",
    "transfer_matrix",
    "QuasiprobSpec",
    "WeightValue",
    "order_ratio",
    "weight_chi",
    "weighted_sum",
    "weighted_terms",
    "ReconstructionPoint",
    "ReconstructionResult",
    "write_result_table",
    "write_oracle_table",
    "write_sidecar",
    "write_table",
    "phase_space_grid",
    "quasiprob_direct",
    "reconstruct_point",
    "scan_grid",
    "direct_grid",
    "binomial_series_identity_check",
]
