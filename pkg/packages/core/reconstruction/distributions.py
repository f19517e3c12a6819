"""Photon-number distributions and their evolution through the thermal channel.

The diagonal of the evolved state depends only on the diagonal of the
initial state:

    P_m(t) = 1/(1+N_t) sum_k sum_n C(k,n) C(m,n) Gamma_n^{m-n} Gamma_n1^{k-n} q^n P_k(0),
    q = e^{-gamma t} / (1+N_t)^2.
"""

from functools import lru_cache
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config.config import resolve_tolerances
from ..evolution.channel import ChannelCoefficients
from ..fock.states import FockDensityMatrix
from ..utils.errors import DomainError
from ..utils.logger import get_logger

logger = get_logger(__name__)

# largest photon index the transfer matrix supports
MAX_PHOTON_INDEX = 512

_SUM_SLACK = 1e-9


class PhotonDistribution(BaseModel):
    """Photon-number probabilities P_0 ... P_{M-1}.

    Negative round-off below the clamp tolerance is set to zero on
    construction. Distributions recovered from measurements are flagged
    ``estimated``; their entries may be negative and are kept as given.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    probs: np.ndarray = Field(description="P_m for m < trunc")
    tail_bound: float = Field(default=0.0, ge=0.0, description="Bound on the mass beyond trunc")
    estimated: bool = Field(default=False, description="Values are measurement estimates")

    @model_validator(mode="before")
    @classmethod
    def _clamp(cls, data: Any) -> Any:
        if not isinstance(data, dict) or "probs" not in data:
            return data
        probs = np.array(data["probs"], dtype=float, copy=True).reshape(-1)
        if not np.all(np.isfinite(probs)):
            raise ValueError("probabilities contain non-finite values")
        if not data.get("estimated", False):
            clamp = resolve_tolerances().clamp
            lowest = float(probs.min()) if probs.size else 0.0
            if lowest < -clamp:
                raise ValueError(f"negative probability {lowest:.3e} below -{clamp:.0e}")
            probs = np.clip(probs, 0.0, None)
            total = float(probs.sum())
            if total > 1.0 + _SUM_SLACK:
                raise ValueError(f"probabilities sum to {total!r} > 1")
        probs.setflags(write=False)
        return {**data, "probs": probs}

    @property
    def trunc(self) -> int:
        return int(self.probs.shape[0])

    @property
    def total(self) -> float:
        return float(np.sum(self.probs))

    @classmethod
    def from_state(cls, rho: FockDensityMatrix) -> "PhotonDistribution":
        """Diagonal of a density matrix, carrying its tail mass."""
        return cls(probs=rho.diagonal, tail_bound=rho.tail_mass_bound)

    def padded(self, trunc: int) -> np.ndarray:
        """Probabilities extended with zeros to length ``trunc``."""
        out = np.zeros(trunc)
        out[: self.trunc] = self.probs[:trunc]
        return out


@lru_cache(maxsize=1)
def _binomials() -> np.ndarray:
    """Pascal's triangle C[m, n] for m, n < MAX_PHOTON_INDEX in extended precision."""
    table = np.zeros((MAX_PHOTON_INDEX, MAX_PHOTON_INDEX), dtype=np.longdouble)
    table[:, 0] = 1
    for m in range(1, MAX_PHOTON_INDEX):
        table[m, 1 : m + 1] = table[m - 1, :m] + table[m - 1, 1 : m + 1]
    table.setflags(write=False)
    return table


@lru_cache(maxsize=64)
def _transfer_matrix(
    gamma_n: float, gamma_n1: float, n_t: float, exp_gt: float, m_in: int, m_out: int
) -> np.ndarray:
    """T[m, k] with P(t) = T @ P(0), factorized as A[m, n] B[n, k] over n < m_in.

    Every factor is positive, so no cancellation occurs; the matrix is kept
    in extended precision because the weighted sums downstream amplify the
    relative error of P_m(t) by |chi|^m.
    """
    ld = np.longdouble
    binom = _binomials()
    # sqrt(q) on each factor, q = e^{-gamma t} / (1+N_t)^2
    root_q = np.sqrt(ld(exp_gt)) / (1 + ld(n_t))
    up = np.power(ld(gamma_n), np.arange(m_out, dtype=ld))
    down = np.power(ld(gamma_n1), np.arange(m_in, dtype=ld))
    survive = np.power(root_q, np.arange(m_in, dtype=ld))

    m, n = np.meshgrid(np.arange(m_out), np.arange(m_in), indexing="ij")
    a = binom[m, n] * up[np.clip(m - n, 0, None)] * survive[None, :]
    n2, k = np.meshgrid(np.arange(m_in), np.arange(m_in), indexing="ij")
    b = binom[k, n2] * down[np.clip(k - n2, 0, None)] * survive[:, None]

    transfer = (a @ b) / (1 + ld(n_t))
    transfer.setflags(write=False)
    return transfer


def transfer_matrix(c: ChannelCoefficients, m_in: int, m_out: int) -> np.ndarray:
    """Matrix mapping an initial photon distribution (length m_in) to the evolved one.

    Raises:
        DomainError: If m_out < m_in or m_out exceeds the supported index range
    """
    if m_in < 1 or m_out < m_in:
        raise DomainError("m_out", m_out, f"output truncation {m_out} must be >= {m_in}")
    if m_out > MAX_PHOTON_INDEX:
        raise DomainError(
            "m_out", m_out, f"photon indices above {MAX_PHOTON_INDEX} are not supported"
        )
    return _transfer_matrix(c.Gamma_n, c.Gamma_n1, c.N_t, c.exp_gt, m_in, m_out)


def evolved_diagonal(
    p0: PhotonDistribution, c: ChannelCoefficients, m_out: Optional[int] = None
) -> PhotonDistribution:
    """Propagate photon statistics through the thermal channel.

    Args:
        p0: Diagonal of the state before the decay
        c: Channel coefficients
        m_out: Output truncation (default p0.trunc); must be >= p0.trunc

    Returns:
        Evolved distribution; mass pushed beyond m_out is added to tail_bound

    Raises:
        DomainError: If m_out is outside [p0.trunc, 512]
    """
    if m_out is None:
        m_out = p0.trunc
    transfer = transfer_matrix(c, p0.trunc, m_out)
    evolved = transfer @ p0.probs.astype(np.longdouble)
    pushed = max(0.0, float(np.sum(p0.probs.astype(np.longdouble)) - np.sum(evolved)))
    probs = evolved.astype(float)
    logger.debug(
        f"evolved diagonal {p0.trunc} -> {m_out} photons, {pushed:.3e} pushed past the cut-off"
    )
    return PhotonDistribution(
        probs=probs, tail_bound=p0.tail_bound + pushed, estimated=p0.estimated
    )
