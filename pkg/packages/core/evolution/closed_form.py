"""Closed-form propagator of the undriven thermal channel.

rho(t) = e^{gamma t/2} exp(Gamma_n J+) x^{J3} exp(Gamma_n1 J-) rho,
with x = e^{-gamma t/2} / (1 + N_t).
"""

from typing import Optional

import numpy as np

from ..config.config import Tolerances, resolve_tolerances
from ..fock.states import FockDensityMatrix, hermitize
from ..utils.errors import TruncationError
from ..utils.logger import get_logger
from .channel import ChannelCoefficients, ChannelParams, channel_coefficients
from .superoperators import exp_shift_series, j_minus, j_plus, j_three_power

logger = get_logger(__name__)


def evolve_closed_form(
    rho: FockDensityMatrix,
    c: ChannelCoefficients,
    gamma_t: Optional[float] = None,
    tolerances: Optional[Tolerances] = None,
) -> FockDensityMatrix:
    """Apply the thermal damping channel to a state.

    Args:
        rho: Initial state
        c: Channel coefficients
        gamma_t: Dimensionless decay time; defaults to the one ``c`` was built for
        tolerances: Numerical contracts (defaults from settings)

    Returns:
        Evolved state; mass pushed past the cut-off is added to tail_mass_bound

    Raises:
        TruncationError: If the pushed-out mass exceeds the truncation tolerance
    """
    tol = resolve_tolerances(tolerances)
    gt = c.gamma_t if gamma_t is None else gamma_t

    lowered, n_lower = exp_shift_series(rho.entries, c.Gamma_n1, j_minus, tol.series_term)
    scaled = j_three_power(lowered, c.x3, log_scale=0.5 * gt)
    raised, n_raise = exp_shift_series(scaled, c.Gamma_n, j_plus, tol.series_term)
    out = hermitize(raised)

    leaked = max(0.0, rho.trace - float(np.trace(out).real))
    logger.debug(
        f"closed form gamma*t={gt:.6g}: {n_lower}+{n_raise} series terms, leaked {leaked:.3e}"
    )
    if leaked > tol.truncation:
        raise TruncationError("evolve_closed_form", leaked, tol.truncation, rho.dim)
    return FockDensityMatrix(entries=out, tail_mass_bound=rho.tail_mass_bound + leaked)


def evolve_channel(
    rho: FockDensityMatrix, p: ChannelParams, tolerances: Optional[Tolerances] = None
) -> FockDensityMatrix:
    """Convenience wrapper: evolve_closed_form with coefficients computed from ``p``."""
    return evolve_closed_form(rho, channel_coefficients(p), p.gamma_t, tolerances)
