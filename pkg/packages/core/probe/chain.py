"""Full measurement chain: displaced field, decay, probe signal, inversion, weighting."""

from typing import Optional

from pydantic import BaseModel, ConfigDict

from ..config.config import Tolerances, resolve_tolerances
from ..evolution.channel import ChannelParams, channel_coefficients
from ..fock.displacement import displace_state
from ..fock.states import FockDensityMatrix
from ..reconstruction.distributions import (
    MAX_PHOTON_INDEX,
    PhotonDistribution,
    evolved_diagonal,
)
from ..reconstruction.pipeline import OUTPUT_MARGIN
from ..reconstruction.results import ReconstructionPoint
from ..reconstruction.weights import QuasiprobSpec, weight_chi, weighted_sum
from ..utils.numbers import ComplexNumber
from .atom_probe import (
    ProbeSignal,
    ProbeSpec,
    add_measurement_noise,
    inversion_signal,
    invert_fourier,
)


class ProbeMeasurement(BaseModel):
    """What one probe run sees and what it recovers."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    beta: ComplexNumber
    true_distribution: PhotonDistribution
    signal: ProbeSignal
    recovered: PhotonDistribution
    input_tail: float


def measure_photon_statistics(
    rho0: FockDensityMatrix,
    beta: complex,
    p: ChannelParams,
    probe: ProbeSpec,
    noise_amplitude: float = 0.0,
    seed: Optional[int] = None,
    tolerances: Optional[Tolerances] = None,
) -> ProbeMeasurement:
    """Simulate the probe on the decayed field D^dagger(beta) rho0 D(beta) and invert it.

    Args:
        rho0: Initial field
        beta: Displacement applied before the decay
        p: Channel parameters
        probe: Probe settings
        noise_amplitude: Standard deviation of additive signal noise (0 = off)
        seed: Noise generator seed

    Returns:
        ProbeMeasurement with the true and recovered statistics
    """
    tol = resolve_tolerances(tolerances)
    displaced = displace_state(rho0, beta, tol)
    p0 = PhotonDistribution.from_state(displaced)
    m_out = min(MAX_PHOTON_INDEX, max(displaced.dim + OUTPUT_MARGIN, probe.m_max))
    p_t = evolved_diagonal(p0, channel_coefficients(p), m_out)
    signal = add_measurement_noise(inversion_signal(p_t, probe), noise_amplitude, seed)
    return ProbeMeasurement(
        beta=complex(beta),
        true_distribution=p_t,
        signal=signal,
        recovered=invert_fourier(signal, probe),
        input_tail=displaced.tail_mass_bound,
    )


def reconstruct_point_from_probe(
    rho0: FockDensityMatrix,
    beta: complex,
    spec: QuasiprobSpec,
    p: ChannelParams,
    probe: ProbeSpec,
    noise_amplitude: float = 0.0,
    seed: Optional[int] = None,
    tolerances: Optional[Tolerances] = None,
) -> ReconstructionPoint:
    """Reconstruct W(beta; s) from the inverted probe signal instead of the exact statistics.

    Raises:
        AliasingError: If the probe sampling is inadequate
        NonConvergenceError: If the recovered statistics cannot support the weighted sum
    """
    tol = resolve_tolerances(tolerances)
    w = weight_chi(spec, channel_coefficients(p), tol)
    measurement = measure_photon_statistics(rho0, beta, p, probe, noise_amplitude, seed, tol)
    F, tail = weighted_sum(measurement.recovered, w, probe.m_max, tol)
    return ReconstructionPoint(
        beta=beta,
        F=F,
        W=w.norm_factor * F,
        tail_estimate=tail,
        converged=True,
        m_max=probe.m_max,
        m_out=measurement.true_distribution.trunc,
        input_tail=measurement.input_tail,
    )
