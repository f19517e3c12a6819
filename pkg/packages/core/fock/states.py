"""Truncated Fock-space density matrices and the standard test states.

Every state carries a ``tail_mass_bound``: the probability that the
truncation to ``dim`` basis vectors has discarded, either when the state was
built or later when an operation pushed weight past the cut-off.
"""

from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.special import gammaln, xlogy

from ..config.config import Tolerances, resolve_tolerances
from ..utils.errors import DomainError, FockIndexError, TruncationError
from ..utils.logger import get_logger

logger = get_logger(__name__)


def _read_only(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class FockDensityMatrix(BaseModel):
    """Density matrix of the cavity mode in the basis |0>, ..., |dim-1>.

    Immutable: the underlying array is read-only. Construction checks
    Hermiticity and that any trace deficit is accounted for by
    ``tail_mass_bound``; positivity is checked by :func:`validate_state`.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    entries: np.ndarray = Field(description="dim x dim complex matrix")
    tail_mass_bound: float = Field(
        default=0.0, ge=0.0, description="Probability mass lost to truncation"
    )

    @field_validator("entries", mode="before")
    @classmethod
    def _as_square_complex(cls, value: Any) -> np.ndarray:
        array = np.array(value, dtype=np.complex128, copy=True)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] < 1:
            raise ValueError(f"entries must be a non-empty square matrix, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ValueError("entries contain non-finite values")
        return _read_only(array)

    @model_validator(mode="after")
    def _check_invariants(self) -> "FockDensityMatrix":
        tol = resolve_tolerances()
        herm = float(np.max(np.abs(self.entries - self.entries.conj().T)))
        if herm > tol.hermiticity:
            raise ValueError(f"matrix is not Hermitian (max deviation {herm:.3e})")
        trace_error = abs(float(np.trace(self.entries).real) - 1.0)
        if trace_error > self.tail_mass_bound + tol.trace:
            raise ValueError(
                f"trace deviates from 1 by {trace_error:.3e}, more than the recorded "
                f"tail mass {self.tail_mass_bound:.3e}"
            )
        return self

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @property
    def diagonal(self) -> np.ndarray:
        """Photon-number probabilities <m|rho|m>."""
        return np.real(np.diag(self.entries)).copy()

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def entry(self, m: int, k: int) -> complex:
        return complex(self.entries[m, k])


def hermitize(matrix: np.ndarray) -> np.ndarray:
    """Remove the anti-Hermitian round-off part of a matrix product."""
    return 0.5 * (matrix + matrix.conj().T)


def coherent_amplitudes(alpha0: complex, dim: int) -> np.ndarray:
    """Exact Fock amplitudes exp(-|a|^2/2) a^m / sqrt(m!) for m < dim, unnormalized."""
    if dim < 1:
        raise DomainError("dim", dim)
    m = np.arange(dim)
    radius = abs(alpha0)
    log_mag = -0.5 * radius**2 + xlogy(m, radius) - 0.5 * gammaln(m + 1)
    return np.exp(log_mag) * np.exp(1j * m * np.angle(alpha0))


def _pure(
    vector: np.ndarray,
    tail: float,
    operation: str,
    tolerances: Optional[Tolerances],
) -> FockDensityMatrix:
    tol = resolve_tolerances(tolerances)
    if tail > tol.truncation:
        raise TruncationError(operation, tail, tol.truncation, vector.shape[0])
    vector = vector / np.linalg.norm(vector)
    logger.debug(f"{operation}: dim={vector.shape[0]}, tail mass {tail:.3e}")
    return FockDensityMatrix(
        entries=hermitize(np.outer(vector, vector.conj())),
        tail_mass_bound=tail,
    )


def coherent_state(
    alpha0: complex, dim: int, tolerances: Optional[Tolerances] = None
) -> FockDensityMatrix:
    """Coherent state |alpha0><alpha0| renormalized over the truncated basis.

    Args:
        alpha0: Coherent amplitude
        dim: Truncation dimension; (|alpha0| + 3)^2 <= dim keeps the tail below 1e-12
        tolerances: Numerical contracts (defaults from settings)

    Returns:
        Pure density matrix with the discarded Poisson mass as tail_mass_bound

    Raises:
        TruncationError: If the discarded mass exceeds the truncation tolerance
    """
    c = coherent_amplitudes(alpha0, dim)
    tail = max(0.0, 1.0 - float(np.sum(np.abs(c) ** 2)))
    return _pure(c, tail, "coherent_state", tolerances)


def fock_state(n: int, dim: int) -> FockDensityMatrix:
    """Number state |n><n|."""
    if dim < 1:
        raise DomainError("dim", dim)
    if not 0 <= n < dim:
        raise FockIndexError(n, dim)
    entries = np.zeros((dim, dim), dtype=np.complex128)
    entries[n, n] = 1.0
    return FockDensityMatrix(entries=entries)


def cat_state(
    alpha0: complex, sign: int, dim: int, tolerances: Optional[Tolerances] = None
) -> FockDensityMatrix:
    """Normalized superposition |alpha0> + sign |-alpha0>.

    The even cat (sign=+1) is built with exact zeros on odd photon numbers.

    Raises:
        DomainError: If sign is not +-1 or the odd cat amplitude vanishes
        TruncationError: If the discarded mass exceeds the truncation tolerance
    """
    if sign not in (1, -1):
        raise DomainError("sign", sign, f"cat sign must be +1 or -1, got {sign}")
    c = coherent_amplitudes(alpha0, dim)
    parity = np.where(np.arange(dim) % 2 == 0, 1.0, -1.0)
    # |-a> has amplitudes (-1)^m c_m, so odd (even) terms cancel exactly
    vector = c * (1.0 + sign * parity)
    exact_norm = 2.0 * (1.0 + sign * np.exp(-2.0 * abs(alpha0) ** 2))
    if exact_norm < 1e-14:
        raise DomainError("alpha0", alpha0, "odd cat state vanishes as alpha0 -> 0")
    tail = max(0.0, 1.0 - float(np.sum(np.abs(vector) ** 2)) / exact_norm)
    return _pure(vector, tail, "cat_state", tolerances)


def thermal_state(nbar: float, dim: int) -> FockDensityMatrix:
    """Thermal (geometric) state with mean photon number nbar, renormalized."""
    if nbar < 0:
        raise DomainError("nbar", nbar, f"thermal photon number must be >= 0, got {nbar}")
    if dim < 1:
        raise DomainError("dim", dim)
    ratio = nbar / (1.0 + nbar)
    weights = np.power(ratio, np.arange(dim, dtype=float))
    tail = float(ratio**dim)
    return FockDensityMatrix(
        entries=np.diag(weights / np.sum(weights)).astype(np.complex128),
        tail_mass_bound=tail,
    )
