"""Thermal damping channel parameters and their derived coefficients."""

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ChannelParams(BaseModel):
    """Cavity decay constant, thermal occupancy and evolution time."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    gamma: float = Field(default=1.0, ge=0.0, description="Decay constant (1/time)")
    nbar: float = Field(default=0.0, ge=0.0, description="Mean thermal photon number")
    t: float = Field(default=0.0, ge=0.0, description="Evolution time")

    @model_validator(mode="after")
    def _finite(self) -> "ChannelParams":
        if not math.isfinite(self.gamma * self.t) or not math.isfinite(self.nbar):
            raise ValueError("gamma*t and nbar must be finite")
        return self

    @property
    def gamma_t(self) -> float:
        return self.gamma * self.t


class ChannelCoefficients(BaseModel):
    """N_t, Gamma_nbar(t), Gamma_nbar+1(t) and the J3 base of the closed-form propagator."""

    model_config = ConfigDict(frozen=True)

    gamma_t: float
    nbar: float
    N_t: float = Field(description="nbar (1 - e^{-gamma t})")
    Gamma_n: float = Field(description="nbar (1 - e^{-gamma t}) / (1 + N_t)")
    Gamma_n1: float = Field(description="(nbar + 1)(1 - e^{-gamma t}) / (1 + N_t)")
    x3: float = Field(description="e^{-gamma t / 2} / (1 + N_t)")
    exp_gt: float = Field(description="e^{-gamma t}")


def channel_coefficients(p: ChannelParams) -> ChannelCoefficients:
    """Evaluate the decay coefficients for a channel.

    Args:
        p: Channel parameters

    Returns:
        ChannelCoefficients computed from (gamma, nbar, t)
    """
    gamma_t = p.gamma_t
    exp_gt = math.exp(-gamma_t)
    loss = -math.expm1(-gamma_t)
    n_t = p.nbar * loss
    return ChannelCoefficients(
        gamma_t=gamma_t,
        nbar=p.nbar,
        N_t=n_t,
        Gamma_n=p.nbar * loss / (1.0 + n_t),
        Gamma_n1=(p.nbar + 1.0) * loss / (1.0 + n_t),
        x3=math.exp(-0.5 * gamma_t) / (1.0 + n_t),
        exp_gt=exp_gt,
    )
