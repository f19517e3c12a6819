"""Thermal damping channel: closed form, drive factorization and integrator oracle."""

from .channel import ChannelParams, ChannelCoefficients, channel_coefficients
from .superoperators import (
    j_minus,
    j_plus,
    j_three,
    j_three_power,
    exp_shift_series,
    commutation_residuals,
)
from .closed_form import evolve_closed_form, evolve_channel
from .integrator import (
    IntegrationResult,
    integrate_master_equation,
    evolve_numerical,
    default_steps,
)
from .drive import DriveSpec, effective_displacement, drive_amplitude, factorized_evolution

__all__ = [
    "ChannelParams",
    "ChannelCoefficients",
    "channel_coefficients",
    "j_minus",
    "j_plus",
    "j_three",
    "j_three_power",
    "exp_shift_series",
    "commutation_residuals",
    "evolve_closed_form",
    "evolve_channel",
    "IntegrationResult",
    "integrate_master_equation",
    "evolve_numerical",
    "default_steps",
    "DriveSpec",
    "effective_displacement",
    "drive_amplitude",
    "factorized_evolution",
]
