"""Atomic-inversion probe of the photon statistics and its Fourier inversion.

A cascade three-level atom resonant with two-photon transitions shows the
inversion

    I(tau) = sum_m P_m cos((2m + 3) lambda tau),

and over one window tau_max = pi / lambda the cosines are orthogonal, so

    P_m = (2 lambda / pi) integral_0^tau_max I(tau) cos((2m + 3) lambda tau) dtau.

The integral is discretized with the midpoint rule, which is exactly
orthogonal on these odd harmonics once n_samples > 2 m_max + 3.
"""

import math
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config.config import get_settings
from ..reconstruction.distributions import PhotonDistribution
from ..utils.errors import AliasingError, DomainError
from ..utils.logger import get_logger

logger = get_logger(__name__)


class ProbeSpec(BaseModel):
    """Probe coupling and sampling.

    Sampling adequacy (n_samples > 2 m_max + 3) is reported by
    ``adequately_sampled`` and enforced when inverting.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    lambda_coupling: float = Field(default=1.0, gt=0.0, description="Atom-field coupling")
    n_samples: int = Field(default=256, ge=1, description="Samples over one window")
    m_max: int = Field(default=20, ge=1, description="Photon numbers to recover")

    @property
    def tau_max(self) -> float:
        return math.pi / self.lambda_coupling

    @property
    def adequately_sampled(self) -> bool:
        return self.n_samples > 2 * self.m_max + 3

    def midpoints(self) -> np.ndarray:
        """tau_j = (j + 1/2) tau_max / n_samples."""
        return (np.arange(self.n_samples) + 0.5) * self.tau_max / self.n_samples


class ProbeSignal(BaseModel):
    """Sampled atomic inversion."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    taus: np.ndarray
    values: np.ndarray

    @model_validator(mode="before")
    @classmethod
    def _as_arrays(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        taus = np.array(data.get("taus", []), dtype=float, copy=True).reshape(-1)
        values = np.array(data.get("values", []), dtype=float, copy=True).reshape(-1)
        if taus.shape != values.shape:
            raise ValueError(f"{taus.shape[0]} sample times but {values.shape[0]} values")
        taus.setflags(write=False)
        values.setflags(write=False)
        return {**data, "taus": taus, "values": values}


def _frequencies(count: int, lambda_coupling: float) -> np.ndarray:
    return (2.0 * np.arange(count) + 3.0) * lambda_coupling


def inversion_signal(p: PhotonDistribution, spec: ProbeSpec) -> ProbeSignal:
    """Sample the inversion produced by a photon distribution on the midpoint grid."""
    taus = spec.midpoints()
    phases = np.outer(taus, _frequencies(p.trunc, spec.lambda_coupling))
    return ProbeSignal(taus=taus, values=np.cos(phases) @ p.probs)


def invert_fourier(sig: ProbeSignal, spec: ProbeSpec) -> PhotonDistribution:
    """Recover P_0 ... P_{m_max-1} from a sampled inversion.

    Args:
        sig: Inversion samples over [0, tau_max]
        spec: Probe settings

    Returns:
        Estimated distribution (entries may be slightly negative)

    Raises:
        AliasingError: If n_samples <= 2 m_max + 3
        DomainError: If the signal does not hold spec.n_samples samples
    """
    if not spec.adequately_sampled:
        raise AliasingError(spec.n_samples, spec.m_max)
    if sig.taus.shape[0] != spec.n_samples:
        raise DomainError(
            "n_samples",
            sig.taus.shape[0],
            f"signal has {sig.taus.shape[0]} samples, probe settings expect {spec.n_samples}",
        )
    weight = spec.tau_max / spec.n_samples
    phases = np.outer(_frequencies(spec.m_max, spec.lambda_coupling), sig.taus)
    probs = (2.0 * spec.lambda_coupling / math.pi) * weight * (np.cos(phases) @ sig.values)
    return PhotonDistribution(probs=probs, estimated=True)


def add_measurement_noise(
    signal: ProbeSignal, amplitude: float, seed: Optional[int] = None
) -> ProbeSignal:
    """Add white Gaussian noise of standard deviation ``amplitude`` to the samples."""
    if amplitude <= 0.0:
        return signal
    rng = np.random.default_rng(seed)
    noisy = signal.values + amplitude * rng.standard_normal(signal.values.shape[0])
    logger.debug(f"added noise of amplitude {amplitude:g} (seed={seed})")
    return ProbeSignal(taus=signal.taus, values=noisy)


def strong_coupling_check(
    lambda_coupling: float, gamma: float, ratio: Optional[float] = None
) -> bool:
    """Whether lambda >= ratio * gamma, so a probe window fits well inside the decay time."""
    if ratio is None:
        ratio = get_settings().strong_coupling_ratio
    ok = lambda_coupling >= ratio * gamma
    if not ok:
        logger.warning(
            f"probe coupling lambda={lambda_coupling:g} is below {ratio:g} x gamma={gamma:g}; "
            "the decay during a probe window is not negligible"
        )
    return ok
