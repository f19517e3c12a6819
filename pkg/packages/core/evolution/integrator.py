"""Fixed-step fourth-order integrator of the driven thermal master equation.

d rho/dt = [alpha^* a - alpha a^dagger, rho]
         + gamma/2 (nbar+1) (2 a rho a^dagger - a^dagger a rho - rho a^dagger a)
         + gamma/2 nbar (2 a^dagger rho a - a a^dagger rho - rho a a^dagger)

Built from explicit ladder-operator matrices, independently of the
superoperator algebra used by the closed form, so it can serve as its oracle.
"""

import math
from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..config.config import Tolerances, resolve_tolerances
from ..fock.states import FockDensityMatrix, hermitize
from ..utils.errors import DomainError, IntegrationAccuracyError
from ..utils.logger import get_channel_logger
from .channel import ChannelParams

# default gamma * dt
GAMMA_STEP = 1e-3


class IntegrationResult(BaseModel):
    """Final state of an integration run and its accuracy diagnostics."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    state: FockDensityMatrix
    steps: int = Field(ge=0)
    dt: float = Field(ge=0.0)
    trace_drift: float = Field(ge=0.0, description="|trace(final) - trace(initial)|")


def lindblad_generator(
    dim: int, p: ChannelParams, alpha: complex
) -> Callable[[np.ndarray], np.ndarray]:
    """Return the map rho -> d rho/dt on a dim-dimensional truncation."""
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(np.complex128)
    ad = a.conj().T
    number = ad @ a
    anti_number = a @ ad
    drive = np.conj(alpha) * a - alpha * ad
    down = 0.5 * p.gamma * (p.nbar + 1.0)
    up = 0.5 * p.gamma * p.nbar

    def generator(rho: np.ndarray) -> np.ndarray:
        out = drive @ rho - rho @ drive
        if down:
            out += down * (2.0 * a @ rho @ ad - number @ rho - rho @ number)
        if up:
            out += up * (2.0 * ad @ rho @ a - anti_number @ rho - rho @ anti_number)
        return out

    return generator


def default_steps(p: ChannelParams, alpha: complex, dim: int) -> int:
    """Step count keeping gamma*dt <= 1e-3 and the step inside the RK4 stability region."""
    if p.t == 0.0:
        return 0
    spectral = p.gamma * (2.0 * p.nbar + 1.0) * dim + 2.0 * abs(alpha) * math.sqrt(dim)
    if spectral == 0.0:
        return 1
    limits = [0.5 / spectral]
    if p.gamma > 0.0:
        limits.append(GAMMA_STEP / p.gamma)
    return max(1, math.ceil(p.t / min(limits)))


def integrate_master_equation(
    rho: FockDensityMatrix,
    p: ChannelParams,
    alpha: complex = 0.0,
    steps: Optional[int] = None,
    tolerances: Optional[Tolerances] = None,
) -> IntegrationResult:
    """Integrate the driven master equation from 0 to p.t.

    Args:
        rho: Initial state
        p: Channel parameters (t is the total integration time)
        alpha: Drive amplitude
        steps: Number of RK4 steps (default from :func:`default_steps`)
        tolerances: Numerical contracts (defaults from settings)

    Returns:
        IntegrationResult with the final state and the trace drift

    Raises:
        DomainError: If steps is negative
        IntegrationAccuracyError: If the trace drifts by more than integration_drift
    """
    tol = resolve_tolerances(tolerances)
    log = get_channel_logger(__name__, p)
    if steps is None:
        steps = default_steps(p, alpha, rho.dim)
    if steps < 0:
        raise DomainError("steps", steps, f"step count must be >= 0, got {steps}")
    if steps == 0 or p.t == 0.0:
        return IntegrationResult(state=rho, steps=0, dt=0.0, trace_drift=0.0)

    dt = p.t / steps
    if p.gamma * dt > GAMMA_STEP:
        log.warning(f"coarse integration step: gamma*dt = {p.gamma * dt:.3g}")
    generator = lindblad_generator(rho.dim, p, complex(alpha))
    x = np.array(rho.entries)
    for _ in range(steps):
        k1 = generator(x)
        k2 = generator(x + 0.5 * dt * k1)
        k3 = generator(x + 0.5 * dt * k2)
        k4 = generator(x + dt * k3)
        x = hermitize(x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))

    drift = abs(float(np.trace(x).real) - rho.trace)
    log.debug(f"RK4: {steps} steps of dt={dt:.3e}, trace drift {drift:.3e}")
    if drift > tol.integration_drift:
        raise IntegrationAccuracyError(drift, tol.integration_drift, steps)
    state = FockDensityMatrix(entries=x, tail_mass_bound=rho.tail_mass_bound + drift)
    return IntegrationResult(state=state, steps=steps, dt=dt, trace_drift=drift)


def evolve_numerical(
    rho: FockDensityMatrix,
    p: ChannelParams,
    alpha: complex = 0.0,
    steps: Optional[int] = None,
    tolerances: Optional[Tolerances] = None,
) -> FockDensityMatrix:
    """Brute-force evolution; the state part of :func:`integrate_master_equation`."""
    return integrate_master_equation(rho, p, alpha, steps, tolerances).state
