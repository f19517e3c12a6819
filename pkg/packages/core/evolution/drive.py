"""Drive factorization: a resonant drive followed by decay acts as a displacement.

With R rho = [alpha^* a - alpha a^dagger, rho] the commutator [L, R] is
proportional to R, so e^{(R+L)t} = e^{Lt} e^{R'} with a displacement
D^dagger(beta) rho D(beta) whose amplitude is

    beta = -2 alpha (1 - e^{gamma t/2}) / gamma.

The exponent grows with t; the subsequent decay map damps it, leaving a
physical field amplitude of -(2 alpha/gamma)(1 - e^{-gamma t/2}).
"""

import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from ..config.config import Tolerances, resolve_tolerances
from ..fock.displacement import displace_state, headroom_ok
from ..fock.states import FockDensityMatrix
from ..utils.errors import DomainError
from ..utils.logger import get_logger
from ..utils.numbers import ComplexNumber
from .channel import ChannelParams, channel_coefficients
from .closed_form import evolve_closed_form

logger = get_logger(__name__)


def effective_displacement(
    alpha: complex, gamma: float, t: float, dim: Optional[int] = None
) -> complex:
    """Displacement amplitude equivalent to driving at alpha for time t.

    Args:
        alpha: Drive amplitude (1/time)
        gamma: Decay constant (1/time)
        t: Drive duration
        dim: Truncation to check the headroom against, if given

    Returns:
        beta; alpha*t when gamma is zero
    """
    if gamma < 0 or t < 0:
        raise DomainError("gamma, t", (gamma, t), "gamma and t must be >= 0")
    if gamma == 0.0:
        beta = complex(alpha) * t
    else:
        # -(1 - e^{x}) = expm1(x)
        beta = 2.0 * complex(alpha) * math.expm1(0.5 * gamma * t) / gamma
    if dim is not None and not headroom_ok(beta, dim):
        logger.warning(
            f"effective displacement |beta|={abs(beta):.4g} exceeds the headroom of dim={dim}"
        )
    return beta


def drive_amplitude(beta: complex, gamma: float, t: float) -> complex:
    """Inverse of :func:`effective_displacement`: the alpha that produces beta.

    Raises:
        DomainError: If t is zero (no drive can displace in zero time)
    """
    if t <= 0:
        raise DomainError("t", t, f"drive duration must be > 0, got {t}")
    if gamma < 0:
        raise DomainError("gamma", gamma)
    if gamma == 0.0:
        return complex(beta) / t
    return complex(beta) * gamma / (2.0 * math.expm1(0.5 * gamma * t))


class DriveSpec(BaseModel):
    """Drive amplitude and duration; beta is derived."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    alpha: ComplexNumber = Field(default=0j, description="Drive amplitude (1/time)")
    gamma: float = Field(default=1.0, ge=0.0, description="Decay constant (1/time)")
    t_drive: float = Field(default=0.0, ge=0.0, description="Drive duration")

    @property
    def beta(self) -> complex:
        return effective_displacement(self.alpha, self.gamma, self.t_drive)

    @classmethod
    def for_beta(cls, beta: complex, gamma: float, t_drive: float) -> "DriveSpec":
        """Drive settings that realize a target displacement."""
        return cls(alpha=drive_amplitude(beta, gamma, t_drive), gamma=gamma, t_drive=t_drive)


def factorized_evolution(
    rho: FockDensityMatrix,
    alpha: complex,
    p: ChannelParams,
    tolerances: Optional[Tolerances] = None,
) -> FockDensityMatrix:
    """Driven, damped evolution as a displacement followed by the closed-form channel.

    Args:
        rho: Initial state
        alpha: Drive amplitude
        p: Channel parameters; the drive lasts the whole evolution time
        tolerances: Numerical contracts (defaults from settings)

    Returns:
        rho(t) = e^{Lt} D^dagger(beta) rho D(beta)
    """
    tol = resolve_tolerances(tolerances)
    beta = effective_displacement(alpha, p.gamma, p.t, rho.dim)
    displaced = displace_state(rho, beta, tol)
    return evolve_closed_form(displaced, channel_coefficients(p), p.gamma_t, tol)
