"""State metrics and the density-matrix validator."""

from typing import Optional

import numpy as np
from pydantic import BaseModel, Field
from scipy.linalg import eigvalsh

from ..config.config import Tolerances, resolve_tolerances
from ..utils.errors import DimensionMismatchError, InvalidStateError
from ..utils.logger import get_logger
from .states import FockDensityMatrix

logger = get_logger(__name__)


class StateDiagnostics(BaseModel):
    """Validation report for a density matrix."""

    dim: int
    hermiticity_error: float = Field(description="max |rho - rho^dagger|")
    trace_error: float = Field(description="|trace - 1|")
    min_eigenvalue: float
    tail_mass_bound: float
    is_valid: bool


def trace_distance(rho1: FockDensityMatrix, rho2: FockDensityMatrix) -> float:
    """Half the sum of absolute eigenvalues of rho1 - rho2."""
    if rho1.dim != rho2.dim:
        raise DimensionMismatchError(rho1.dim, rho2.dim)
    diff = rho1.entries - rho2.entries
    return 0.5 * float(np.sum(np.abs(eigvalsh(0.5 * (diff + diff.conj().T)))))


def mean_photon(rho: FockDensityMatrix) -> float:
    return float(np.dot(np.arange(rho.dim), rho.diagonal))


def purity(rho: FockDensityMatrix) -> float:
    return float(np.real(np.trace(rho.entries @ rho.entries)))


def validate_state(
    rho: FockDensityMatrix, tolerances: Optional[Tolerances] = None
) -> StateDiagnostics:
    """Check Hermiticity, trace and positivity of a density matrix.

    Args:
        rho: State to check
        tolerances: Numerical contracts (defaults from settings)

    Returns:
        StateDiagnostics with the measured deviations
    """
    tol = resolve_tolerances(tolerances)
    herm = float(np.max(np.abs(rho.entries - rho.entries.conj().T)))
    trace_error = abs(rho.trace - 1.0)
    min_eig = float(eigvalsh(0.5 * (rho.entries + rho.entries.conj().T))[0])
    is_valid = (
        herm <= tol.hermiticity
        and trace_error <= rho.tail_mass_bound + tol.trace
        and min_eig >= -tol.positivity
    )
    return StateDiagnostics(
        dim=rho.dim,
        hermiticity_error=herm,
        trace_error=trace_error,
        min_eigenvalue=min_eig,
        tail_mass_bound=rho.tail_mass_bound,
        is_valid=is_valid,
    )


def check_state(rho: FockDensityMatrix, tolerances: Optional[Tolerances] = None) -> None:
    """Raise InvalidStateError unless rho passes :func:`validate_state`."""
    report = validate_state(rho, tolerances)
    if not report.is_valid:
        logger.error(f"Invalid state: {report.model_dump()}")
        raise InvalidStateError(
            f"state fails validation: hermiticity {report.hermiticity_error:.2e}, "
            f"trace error {report.trace_error:.2e}, min eigenvalue {report.min_eigenvalue:.2e}"
        )
