"""Pointwise quasiprobability reconstruction and grid scans.

Each phase-space point is a separate run: the initial field is displaced by
beta, decays through the channel, and only its photon statistics are kept.
"""

import math
from typing import Optional

import numpy as np
from joblib import Parallel, delayed

from ..config.config import Tolerances, get_settings, resolve_tolerances
from ..evolution.channel import ChannelCoefficients, ChannelParams, channel_coefficients
from ..fock.displacement import displace_state
from ..fock.states import FockDensityMatrix
from ..utils.errors import CavityError, DomainError, NonConvergenceError
from ..utils.logger import get_channel_logger, get_logger
from .distributions import MAX_PHOTON_INDEX, PhotonDistribution, evolved_diagonal
from .results import ReconstructionPoint, ReconstructionResult
from .weights import (
    QuasiprobSpec,
    WeightValue,
    adaptive_m_max,
    order_ratio,
    tail_majorant,
    weight_chi,
    weighted_sum,
    weighted_terms,
)

logger = get_logger(__name__)

# extra output photon numbers on the first try
OUTPUT_MARGIN = 16


def phase_space_grid(
    x_min: float, x_max: float, y_min: float, y_max: float, step: float
) -> list[complex]:
    """Rectangular grid with both ends included, imaginary part outer, real part inner.

    Raises:
        DomainError: If step is not positive or a range is reversed
    """
    if step <= 0:
        raise DomainError("step", step, f"grid step must be > 0, got {step}")
    if x_max < x_min or y_max < y_min:
        raise DomainError("grid", (x_min, x_max, y_min, y_max), "grid ranges are reversed")
    axes = []
    for low, high in ((x_min, x_max), (y_min, y_max)):
        intervals = int(round((high - low) / step))
        if not math.isclose(intervals * step, high - low, rel_tol=1e-9, abs_tol=1e-12):
            logger.warning(
                f"grid width {high - low:g} is not a multiple of step {step:g}; "
                f"the axis [{low:g}, {high:g}] gets {intervals + 1} evenly spaced points"
            )
        axes.append(np.linspace(low, high, intervals + 1))
    xs, ys = axes
    return [complex(float(x), float(y)) for y in ys for x in xs]


def quasiprob_direct(
    rho0: FockDensityMatrix,
    beta: complex,
    s: float,
    tolerances: Optional[Tolerances] = None,
) -> float:
    """W(beta; s) = -2/(pi (s-1)) sum_k u^k <k|D^dagger(beta) rho0 D(beta)|k>.

    Evaluated from the initial state, bypassing the channel.

    Raises:
        DomainError: If s >= 1
    """
    u = order_ratio(s)
    diagonal = displace_state(rho0, beta, tolerances).diagonal
    powers = np.power(u, np.arange(diagonal.shape[0]))
    return -2.0 / (math.pi * (s - 1.0)) * math.fsum(powers * diagonal)


def _evolve_adaptively(
    p0: PhotonDistribution, c: ChannelCoefficients, w: WeightValue, m_out: int, target: float
) -> PhotonDistribution:
    """Grow the output truncation until the weighted tail beyond it is below target."""
    while True:
        p_t = evolved_diagonal(p0, c, m_out)
        if not w.converged or m_out >= MAX_PHOTON_INDEX:
            return p_t
        beyond = tail_majorant(weighted_terms(p_t, w.chi))
        if beyond <= target:
            return p_t
        m_out = min(MAX_PHOTON_INDEX, 2 * m_out)


def reconstruct_point(
    rho0: FockDensityMatrix,
    beta: complex,
    spec: QuasiprobSpec,
    p: ChannelParams,
    tolerances: Optional[Tolerances] = None,
) -> ReconstructionPoint:
    """Recover W(beta; s) of rho0 from the photon statistics after the decay.

    Args:
        rho0: Initial field
        beta: Phase-space point (displacement applied before the decay)
        spec: Quasiprobability order and series length
        p: Channel the displaced field decays through

    Returns:
        ReconstructionPoint with W = norm_factor * F

    Raises:
        DomainError: If s >= 1 or a truncation is out of range
        SingularWeightError: If chi is singular for this channel
        NonConvergenceError: If the weighted series cannot be bounded
        TruncationError: If the displacement leaks past the cut-off
    """
    tol = resolve_tolerances(tolerances)
    c = channel_coefficients(p)
    w = weight_chi(spec, c, tol)

    displaced = displace_state(rho0, beta, tol)
    p0 = PhotonDistribution.from_state(displaced)
    m_out = min(MAX_PHOTON_INDEX, max(displaced.dim + OUTPUT_MARGIN, spec.m_max or 0))
    if m_out < displaced.dim:
        raise DomainError("dim", displaced.dim, f"dim above {MAX_PHOTON_INDEX} is not supported")
    p_t = _evolve_adaptively(p0, c, w, m_out, tol.series_target)

    if spec.m_max is None:
        m_max = adaptive_m_max(weighted_terms(p_t, w.chi), tol.series_target)
    else:
        m_max = min(spec.m_max, p_t.trunc)
    F, tail = weighted_sum(p_t, w, m_max, tol)
    return ReconstructionPoint(
        beta=beta,
        F=F,
        W=w.norm_factor * F,
        tail_estimate=tail,
        converged=True,
        m_max=m_max,
        m_out=p_t.trunc,
        input_tail=displaced.tail_mass_bound,
    )


def _scan_point(
    rho0: FockDensityMatrix,
    beta: complex,
    spec: QuasiprobSpec,
    p: ChannelParams,
    tol: Tolerances,
) -> ReconstructionPoint:
    try:
        return reconstruct_point(rho0, beta, spec, p, tol)
    except NonConvergenceError as e:
        w = weight_chi(spec, channel_coefficients(p), tol)
        return ReconstructionPoint(
            beta=beta,
            F=e.partial_sum,
            W=w.norm_factor * e.partial_sum,
            tail_estimate=e.tail_estimate,
            converged=False,
            m_max=e.m_max,
            error=str(e),
        )
    except CavityError as e:
        return ReconstructionPoint(
            beta=beta,
            F=math.nan,
            W=math.nan,
            tail_estimate=math.inf,
            converged=False,
            error=str(e),
        )


def scan_grid(
    rho0: FockDensityMatrix,
    spec: QuasiprobSpec,
    p: ChannelParams,
    tolerances: Optional[Tolerances] = None,
    threads: Optional[int] = None,
) -> ReconstructionResult:
    """Reconstruct every point of spec.grid.

    Points are independent and run on a thread pool; results keep the grid
    order. Failures are recorded on their rows instead of aborting the scan.

    Args:
        rho0: Initial field
        spec: Quasiprobability order, grid and series length
        p: Channel parameters
        tolerances: Numerical contracts (defaults from settings)
        threads: Worker threads, 0 for one per core (default from settings)

    Returns:
        ReconstructionResult in grid order
    """
    tol = resolve_tolerances(tolerances)
    log = get_channel_logger(__name__, p)
    if threads is None:
        threads = get_settings().threads
    n_jobs = -1 if threads == 0 else threads

    points = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_scan_point)(rho0, beta, spec, p, tol) for beta in spec.grid
    )
    result = ReconstructionResult(
        s=spec.s,
        channel=p,
        dim=rho0.dim,
        m_max_policy="adaptive" if spec.m_max is None else f"fixed:{spec.m_max}",
        tolerances=tol,
        points=list(points),
    )
    failed = len(result.failures)
    log.info(f"scanned {len(result.points)} points at s={spec.s}, {failed} failed")
    if failed:
        log.warning(f"first failure: {result.failures[0].error}")
    return result


def direct_grid(
    rho0: FockDensityMatrix,
    grid: list[complex],
    s: float,
    tolerances: Optional[Tolerances] = None,
) -> list[float]:
    """quasiprob_direct over a grid; points that fail evaluate to NaN."""
    values = []
    for beta in grid:
        try:
            values.append(quasiprob_direct(rho0, beta, s, tolerances))
        except CavityError:
            values.append(math.nan)
    return values
