"""Signal and recovered-distribution tables."""

from pathlib import Path
from typing import Any, Optional

import numpy as np
import pandas as pd

from ..reconstruction.distributions import PhotonDistribution
from ..reconstruction.results import write_sidecar, write_table
from ..utils.logger import get_logger
from .atom_probe import ProbeSignal, ProbeSpec

logger = get_logger(__name__)


def write_signal(
    sig: ProbeSignal,
    spec: ProbeSpec,
    path: str | Path,
    metadata: Optional[dict[str, Any]] = None,
) -> Path:
    """Write ``tau,value`` rows and a sidecar with the probe settings."""
    frame = pd.DataFrame({"tau": sig.taus, "value": sig.values}, columns=["tau", "value"])
    path = write_table(frame, path)
    write_sidecar(
        path,
        {
            "lambda_coupling": spec.lambda_coupling,
            "n_samples": spec.n_samples,
            "m_max": spec.m_max,
            "tau_max": spec.tau_max,
            **(metadata or {}),
        },
    )
    logger.info(f"Wrote {sig.taus.shape[0]} probe samples to {path}")
    return path


def write_distribution(
    recovered: PhotonDistribution,
    path: str | Path,
    reference: Optional[PhotonDistribution] = None,
    metadata: Optional[dict[str, Any]] = None,
) -> tuple[Path, Optional[float]]:
    """Write ``m,P`` rows, plus the reference values and their difference if given.

    Returns:
        (CSV path, max |P - P_reference| or None)
    """
    columns: dict[str, Any] = {"m": np.arange(recovered.trunc), "P": recovered.probs}
    max_error = None
    if reference is not None:
        truth = reference.padded(recovered.trunc)
        columns["P_reference"] = truth
        columns["abs_diff"] = np.abs(recovered.probs - truth)
        max_error = float(columns["abs_diff"].max()) if recovered.trunc else 0.0
    path = write_table(pd.DataFrame(columns), path)
    write_sidecar(
        path,
        {
            "estimated": recovered.estimated,
            "max_abs_diff": max_error,
            **(metadata or {}),
        },
    )
    return path, max_error
