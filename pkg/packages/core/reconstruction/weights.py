"""The weight function chi_s and the weighted photon-number sum.

Summing chi^m P_m(t) over the evolved statistics resums the channel:

    sum_m chi^m T[m, k] = u^k / ((1+N_t)(1 - chi Gamma_n))

so the weighted sum of the decayed field, times the normalization
-2(1+N_t)(1 - chi Gamma_n)/(pi(s-1)), is the s-parametrized
quasiprobability of the field before the decay.
"""

import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..config.config import Tolerances, resolve_tolerances
from ..evolution.channel import ChannelCoefficients
from ..utils.errors import DomainError, NonConvergenceError, SingularWeightError
from ..utils.logger import get_logger
from ..utils.numbers import ComplexNumber
from .distributions import PhotonDistribution

logger = get_logger(__name__)

# consecutive terms used to extrapolate the tail geometrically
_TAIL_WINDOW = 4


def order_ratio(s: float) -> float:
    """u = (s+1)/(s-1).

    Raises:
        DomainError: If s >= 1
    """
    if not s < 1.0:
        raise DomainError("s", s, f"order parameter must be < 1, got {s}")
    return (s + 1.0) / (s - 1.0)


class QuasiprobSpec(BaseModel):
    """Which quasiprobability to reconstruct, and where."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    s: float = Field(default=0.0, description="Order parameter: 0 Wigner, -1 Husimi Q")
    grid: list[ComplexNumber] = Field(default_factory=list, description="Phase-space points")
    m_max: Optional[int] = Field(
        default=None, ge=1, description="Weighted-series length (None = adaptive)"
    )

    @field_validator("s")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("s must be finite")
        return value

    @property
    def u(self) -> float:
        return order_ratio(self.s)


class WeightValue(BaseModel):
    """chi_s for one channel and the normalization that turns F into W."""

    model_config = ConfigDict(frozen=True)

    s: float
    u: float
    chi: float
    chi_gamma_n: float = Field(description="chi * Gamma_n; the resummation needs |.| < 1")
    norm_factor: float = Field(description="-2(1+N_t)(1 - chi Gamma_n) / (pi (s-1))")
    prefactor: float = Field(description="1 / ((1+N_t)(1 - chi Gamma_n))")
    converged: bool


def _chi(u: float, c: ChannelCoefficients) -> tuple[float, float]:
    """chi_s and the denominator it was divided by."""
    q = c.exp_gt / (1.0 + c.N_t) ** 2
    shifted = u - c.Gamma_n1
    denominator = q + c.Gamma_n * shifted
    if denominator == 0.0:
        return math.inf, denominator
    return shifted / denominator, denominator


def weight_chi(
    spec: QuasiprobSpec, c: ChannelCoefficients, tolerances: Optional[Tolerances] = None
) -> WeightValue:
    """Evaluate the weight function for a channel.

    Args:
        spec: Quasiprobability order
        c: Channel coefficients
        tolerances: Numerical contracts (defaults from settings)

    Returns:
        WeightValue; converged is False when |chi Gamma_n| >= 1

    Raises:
        DomainError: If s >= 1
        SingularWeightError: If the denominator of chi vanishes
    """
    tol = resolve_tolerances(tolerances)
    u = order_ratio(spec.s)
    chi, denominator = _chi(u, c)
    if abs(denominator) < tol.singular_weight:
        raise SingularWeightError(spec.s, c.gamma_t, c.nbar, denominator)
    chi_gamma_n = chi * c.Gamma_n
    damping = 1.0 - chi_gamma_n
    prefactor = math.inf if damping == 0.0 else 1.0 / ((1.0 + c.N_t) * damping)
    return WeightValue(
        s=spec.s,
        u=u,
        chi=chi,
        chi_gamma_n=chi_gamma_n,
        norm_factor=-2.0 * (1.0 + c.N_t) * damping / (math.pi * (spec.s - 1.0)),
        prefactor=prefactor,
        converged=abs(chi_gamma_n) < 1.0,
    )


def weighted_terms(p: PhotonDistribution, chi: float) -> np.ndarray:
    """chi^m P_m in extended precision.

    The terms can reach |chi|^m far beyond the double range and cancel to an
    O(1) sum, so they stay in long double until summed.
    """
    m = np.arange(p.trunc)
    magnitude = np.power(np.longdouble(abs(chi)), m.astype(np.longdouble))
    sign = np.where((chi < 0) & (m % 2 == 1), -1.0, 1.0)
    return p.probs.astype(np.longdouble) * magnitude * sign


def tail_majorant(
    terms: np.ndarray, estimated: bool = False, missing_mass: float = 0.0, chi: float = 0.0
) -> float:
    """Bound on sum_{m >= M} |chi^m P_m| beyond the computed range.

    Computed distributions decay geometrically past their support, so the
    ratio of the last terms is extrapolated. Estimated distributions carry
    round-off noise in their last entries instead; there the unaccounted
    probability mass is weighted with |chi|^M.
    """
    size = terms.shape[0]
    if size == 0:
        return 0.0
    if estimated:
        return max(1.0, abs(chi)) ** size * abs(missing_mass)
    window = np.abs(terms[-_TAIL_WINDOW:])
    if window[-1] == 0.0:
        return 0.0
    ratios = [window[i + 1] / window[i] for i in range(len(window) - 1) if window[i] > 0.0]
    if not ratios:
        return math.inf
    ratio = max(ratios)
    if ratio >= 1.0:
        return math.inf
    return float(window[-1] * ratio / (1.0 - ratio))


def adaptive_m_max(terms: np.ndarray, target: float) -> int:
    """Smallest m_max whose neglected in-range terms sum to less than ``target``."""
    suffix = np.cumsum(np.abs(terms)[::-1])[::-1]
    below = np.nonzero(suffix < target)[0]
    return int(below[0]) if below.size else int(terms.shape[0])


def weighted_sum(
    p_t: PhotonDistribution,
    w: WeightValue,
    m_max: Optional[int] = None,
    tolerances: Optional[Tolerances] = None,
) -> tuple[float, float]:
    """F = sum_{m < m_max} chi^m P_m(t) and a bound on what it leaves out.

    Args:
        p_t: Evolved photon distribution
        w: Weight value for the channel that produced p_t
        m_max: Number of terms (default p_t.trunc)
        tolerances: Numerical contracts (defaults from settings)

    Returns:
        (F, tail_estimate); tail_estimate is infinite when unbounded

    Raises:
        DomainError: If m_max exceeds p_t.trunc
        NonConvergenceError: If tail_estimate exceeds the series_tail tolerance
    """
    tol = resolve_tolerances(tolerances)
    if m_max is None:
        m_max = p_t.trunc
    if not 0 <= m_max <= p_t.trunc:
        raise DomainError(
            "m_max", m_max, f"m_max={m_max} exceeds the distribution length {p_t.trunc}"
        )

    terms = weighted_terms(p_t, w.chi)
    partial = float(np.sum(terms[:m_max]))
    if not w.converged:
        tail = math.inf
    else:
        neglected = float(np.sum(np.abs(terms[m_max:])))
        if p_t.tail_bound == 0.0 and not p_t.estimated:
            beyond = 0.0
        else:
            beyond = tail_majorant(terms, p_t.estimated, 1.0 - p_t.total, w.chi)
        tail = neglected + beyond

    if not tail <= tol.series_tail:
        logger.debug(
            f"weighted sum not converged: chi={w.chi:.6g}, chi*Gamma_n={w.chi_gamma_n:.6g}, "
            f"tail {tail:.3e}"
        )
        raise NonConvergenceError(partial, tail, w.chi, w.chi_gamma_n, m_max)
    return partial, tail
