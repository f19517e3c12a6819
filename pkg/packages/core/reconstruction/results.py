"""Reconstruction results and their CSV tables with YAML sidecars."""

from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

import numpy as np
import pandas as pd
import yaml
from pydantic import BaseModel, Field

from ... import __version__
from ..config.config import Tolerances
from ..evolution.channel import ChannelParams
from ..utils.logger import get_logger
from ..utils.numbers import ComplexNumber

logger = get_logger(__name__)

RESULT_COLUMNS = ["beta_re", "beta_im", "s", "W", "F", "tail_estimate", "converged"]
ORACLE_COLUMNS = ["beta_re", "beta_im", "s", "W_pipeline", "W_direct", "abs_diff"]

# 17 significant digits round-trip every double
FLOAT_FORMAT = "%.17g"


class ReconstructionPoint(BaseModel):
    """Quasiprobability recovered at one phase-space point."""

    beta: ComplexNumber
    F: float = Field(description="Weighted sum of the evolved photon statistics")
    W: float = Field(description="Quasiprobability value norm_factor * F")
    tail_estimate: float = Field(description="Bound on the neglected weighted terms")
    converged: bool
    m_max: int = Field(default=0, description="Terms in the weighted sum")
    m_out: int = Field(default=0, description="Output truncation of the evolved statistics")
    input_tail: float = Field(
        default=0.0, description="Mass missing from the displaced initial state itself"
    )
    error: Optional[str] = Field(default=None, description="Failure message, if any")


class ReconstructionResult(BaseModel):
    """A grid scan in grid order, plus what is needed to rerun it."""

    s: float
    channel: ChannelParams
    dim: int = Field(description="Truncation of the initial state")
    m_max_policy: str = Field(default="adaptive")
    tolerances: Tolerances = Field(default_factory=Tolerances)
    points: list[ReconstructionPoint] = Field(default_factory=list)

    @property
    def max_tail_estimate(self) -> float:
        tails = [p.tail_estimate for p in self.points if p.converged]
        return max(tails) if tails else 0.0

    @property
    def failures(self) -> list[ReconstructionPoint]:
        return [p for p in self.points if p.error is not None]

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "beta_re": p.beta.real,
                "beta_im": p.beta.imag,
                "s": self.s,
                "W": p.W,
                "F": p.F,
                "tail_estimate": p.tail_estimate,
                "converged": p.converged,
            }
            for p in self.points
        ]
        return pd.DataFrame(rows, columns=RESULT_COLUMNS)


def write_sidecar(path: str | Path, metadata: dict[str, Any]) -> Path:
    """Write ``<table>.meta.yaml`` next to a table; the timestamp lives only here."""
    path = Path(path)
    sidecar = path.with_name(path.stem + ".meta.yaml")
    document = {
        "table": path.name,
        "software_version": __version__,
        "created_at": datetime.now(timezone.utc).isoformat(),
        **metadata,
    }
    with open(sidecar, "w") as f:
        yaml.safe_dump(document, f, default_flow_style=False, sort_keys=False)
    return sidecar


def write_table(frame: pd.DataFrame, path: str | Path) -> Path:
    """CSV with 17-significant-digit floats."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def result_metadata(result: ReconstructionResult) -> dict[str, Any]:
    return {
        "s": result.s,
        "channel": result.channel.model_dump(mode="json"),
        "dim": result.dim,
        "m_max_policy": result.m_max_policy,
        "m_max_used": [p.m_max for p in result.points],
        "m_out_used": sorted({p.m_out for p in result.points}),
        "max_input_tail": max((p.input_tail for p in result.points), default=0.0),
        "failures": [
            {"beta": [p.beta.real, p.beta.imag], "error": p.error} for p in result.failures
        ],
        "tolerances": result.tolerances.model_dump(mode="json"),
    }


def write_result_table(result: ReconstructionResult, path: str | Path) -> Path:
    """Write ``beta_re,beta_im,s,W,F,tail_estimate,converged`` rows and the sidecar.

    Args:
        result: Scan to write
        path: CSV destination

    Returns:
        The CSV path
    """
    path = write_table(result.to_frame(), path)
    write_sidecar(path, result_metadata(result))
    logger.info(f"Wrote {len(result.points)} reconstruction rows to {path}")
    return path


def write_oracle_table(
    result: ReconstructionResult, direct: list[float], path: str | Path
) -> tuple[Path, float]:
    """Write the pipeline values next to directly evaluated ones.

    Args:
        result: Pipeline scan
        direct: Direct quasiprobability values in the same grid order
        path: CSV destination

    Returns:
        (CSV path, max |W_pipeline - W_direct| over converged points)
    """
    pipeline = np.array([p.W for p in result.points], dtype=float)
    direct_values = np.array(direct, dtype=float)
    diff = np.abs(pipeline - direct_values)
    frame = pd.DataFrame(
        {
            "beta_re": [p.beta.real for p in result.points],
            "beta_im": [p.beta.imag for p in result.points],
            "s": [result.s] * len(result.points),
            "W_pipeline": pipeline,
            "W_direct": direct_values,
            "abs_diff": diff,
        },
        columns=ORACLE_COLUMNS,
    )
    converged = np.array([p.converged for p in result.points], dtype=bool)
    max_deviation = float(diff[converged].max()) if converged.any() else 0.0
    path = write_table(frame, path)
    write_sidecar(path, {**result_metadata(result), "max_deviation": max_deviation})
    return path, max_deviation
