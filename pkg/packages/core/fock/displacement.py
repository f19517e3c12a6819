"""Displacement operator D(beta) = exp(beta a^dagger - beta^* a) in the Fock basis.

Matrix elements come from the associated-Laguerre closed form, which is
accurate element by element. Exponentiating the truncated generator is kept
as a cross-check only: it degrades near the cut-off.
"""

from typing import Optional

import numpy as np
from scipy.linalg import expm
from scipy.special import eval_genlaguerre, gammaln, xlogy

from ..config.config import Tolerances, resolve_tolerances
from ..utils.errors import DomainError, TruncationError
from ..utils.logger import get_logger
from .states import FockDensityMatrix, hermitize

logger = get_logger(__name__)


def headroom_ok(amplitude: float, dim: int) -> bool:
    """Whether (|amplitude| + 3)^2 fits inside the truncation."""
    return (abs(amplitude) + 3.0) ** 2 <= dim


def resolved_columns(beta: complex, dim: int) -> int:
    """Number of leading columns n with (sqrt(n) + |beta| + 3)^2 <= dim (at least 1).

    Only these columns of the truncated matrix are expected to be unitary;
    D(beta)|n> for larger n reaches past the cut-off.
    """
    n = np.arange(dim)
    count = int(np.count_nonzero((np.sqrt(n) + abs(beta) + 3.0) ** 2 <= dim))
    return max(1, count)


def unitarity_deviation(matrix: np.ndarray, columns: Optional[int] = None) -> float:
    """Max |1 - ||column||^2| over the first ``columns`` columns."""
    if columns is None:
        columns = matrix.shape[1]
    norms = np.sum(np.abs(matrix[:, :columns]) ** 2, axis=0)
    return float(np.max(np.abs(1.0 - norms)))


def _laguerre_elements(beta: complex, dim: int) -> np.ndarray:
    m, n = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
    lower = np.minimum(m, n)
    upper = np.maximum(m, n)
    order = upper - lower
    x = abs(beta) ** 2
    log_mag = (
        0.5 * (gammaln(lower + 1) - gammaln(upper + 1))
        + xlogy(order, abs(beta))
        - 0.5 * x
    )
    # below the diagonal the power is beta^k, above it (-beta^*)^k
    phase_angle = np.where(m >= n, np.angle(beta), np.angle(-np.conj(beta)))
    phase = np.exp(1j * order * phase_angle)
    return np.exp(log_mag) * phase * eval_genlaguerre(lower, order, x)


def displacement_matrix(
    beta: complex, dim: int, tolerances: Optional[Tolerances] = None
) -> np.ndarray:
    """Truncated displacement matrix <m|D(beta)|n>.

    Args:
        beta: Displacement amplitude
        dim: Truncation dimension
        tolerances: Numerical contracts (defaults from settings)

    Returns:
        Read-only dim x dim complex matrix

    Raises:
        TruncationError: If the resolved columns deviate from unit norm
            by more than the unitarity tolerance
    """
    if dim < 1:
        raise DomainError("dim", dim)
    tol = resolve_tolerances(tolerances)
    matrix = _laguerre_elements(complex(beta), dim)
    columns = resolved_columns(beta, dim)
    deviation = unitarity_deviation(matrix, columns)
    logger.debug(
        f"D({beta:.6g}) dim={dim}: unitarity deviation {deviation:.3e} "
        f"over {columns} resolved columns"
    )
    if deviation > tol.unitarity:
        raise TruncationError("displacement_matrix", deviation, tol.unitarity, dim)
    matrix.setflags(write=False)
    return matrix


def displacement_matrix_expm(beta: complex, dim: int) -> np.ndarray:
    """Cross-check: exponential of the truncated generator beta a^dagger - beta^* a."""
    a = np.diag(np.sqrt(np.arange(1, dim)), k=1).astype(np.complex128)
    generator = beta * a.conj().T - np.conj(beta) * a
    return expm(generator)


def displace_state(
    rho: FockDensityMatrix, beta: complex, tolerances: Optional[Tolerances] = None
) -> FockDensityMatrix:
    """Return D^dagger(beta) rho D(beta).

    The probability pushed past the cut-off is added to ``tail_mass_bound``.

    Raises:
        TruncationError: If the leaked mass exceeds the truncation tolerance
    """
    tol = resolve_tolerances(tolerances)
    if beta == 0:
        return rho
    d = displacement_matrix(beta, rho.dim, tol)
    out = hermitize(d.conj().T @ rho.entries @ d)
    leaked = max(0.0, rho.trace - float(np.trace(out).real))
    if leaked > tol.truncation:
        raise TruncationError("displace_state", leaked, tol.truncation, rho.dim)
    if not headroom_ok(beta, rho.dim):
        logger.warning(
            f"displacement |beta|={abs(beta):.3g} has little headroom in dim={rho.dim} "
            f"(leaked {leaked:.2e})"
        )
    return FockDensityMatrix(entries=out, tail_mass_bound=rho.tail_mass_bound + leaked)
