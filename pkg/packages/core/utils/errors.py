"""Custom exceptions for the cavity reconstruction toolkit."""

from typing import Any, Optional


class CavityError(Exception):
    """Base exception for all toolkit errors."""
    pass


class ConfigurationError(CavityError):
    """Raised when there's a configuration error."""
    pass


class DomainError(CavityError, ValueError):
    """Raised when a parameter lies outside the domain of an operation."""

    def __init__(self, parameter: str, value: Any, message: Optional[str] = None):
        """Initialize error.

        Args:
            parameter: Name of the offending parameter
            value: The rejected value
            message: Optional custom message
        """
        self.parameter = parameter
        self.value = value
        if message is None:
            message = f"Parameter '{parameter}' out of domain: {value!r}"
        super().__init__(message)


class DimensionMismatchError(CavityError, ValueError):
    """Raised when two states of different truncation are combined."""

    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"Dimension mismatch: {left} != {right}")


class InvalidStateError(CavityError):
    """Raised when a density matrix fails Hermiticity, trace or positivity checks."""
    pass


class NumericalError(CavityError):
    """Base class for failures of a numerical contract."""
    pass


class TruncationError(NumericalError):
    """Raised when the Fock cut-off is too small for the requested accuracy."""

    def __init__(self, operation: str, leaked: float, tolerance: float, dim: int):
        """Initialize error.

        Args:
            operation: Name of the operation that lost probability mass
            leaked: Mass (or unitarity deviation) beyond the cut-off
            tolerance: The configured limit
            dim: Truncation dimension in use
        """
        self.operation = operation
        self.leaked = leaked
        self.tolerance = tolerance
        self.dim = dim
        super().__init__(
            f"{operation}: {leaked:.3e} beyond truncation (limit {tolerance:.1e}, dim={dim}); "
            f"increase dim"
        )


class IntegrationAccuracyError(NumericalError):
    """Raised when the master-equation integrator drifts in trace."""

    def __init__(self, drift: float, tolerance: float, steps: int):
        self.drift = drift
        self.tolerance = tolerance
        self.steps = steps
        super().__init__(
            f"Integrator trace drift {drift:.3e} exceeds {tolerance:.1e} after {steps} steps"
        )


class SingularWeightError(NumericalError):
    """Raised when the weight function denominator vanishes."""

    def __init__(self, s: float, gamma_t: float, nbar: float, denominator: float):
        self.s = s
        self.gamma_t = gamma_t
        self.nbar = nbar
        self.denominator = denominator
        super().__init__(
            f"Singular weight at s={s}, gamma*t={gamma_t}, nbar={nbar} "
            f"(denominator {denominator:.3e}); reconstruction is ill-conditioned here"
        )


class NonConvergenceError(NumericalError):
    """Raised when the weighted photon-number series cannot be trusted."""

    def __init__(
        self,
        partial_sum: float,
        tail_estimate: float,
        chi: float,
        chi_gamma_n: float,
        m_max: int,
    ):
        """Initialize error.

        Args:
            partial_sum: Weighted sum over the terms that were available
            tail_estimate: Bound on the neglected terms (may be inf)
            chi: Weight value in use
            chi_gamma_n: Product that decides convergence of the resummation
            m_max: Number of terms summed
        """
        self.partial_sum = partial_sum
        self.tail_estimate = tail_estimate
        self.chi = chi
        self.chi_gamma_n = chi_gamma_n
        self.m_max = m_max
        super().__init__(
            f"Weighted series not converged: tail estimate {tail_estimate:.3e} "
            f"(chi={chi:.6g}, chi*Gamma_n={chi_gamma_n:.6g}, m_max={m_max}, "
            f"partial sum {partial_sum:.6g})"
        )


class AliasingError(NumericalError):
    """Raised when the probe sampling cannot resolve the requested photon numbers."""

    def __init__(self, n_samples: int, m_max: int):
        self.n_samples = n_samples
        self.m_max = m_max
        super().__init__(
            f"n_samples={n_samples} cannot resolve m_max={m_max}: "
            f"need n_samples > {2 * m_max + 3}"
        )


class FockIndexError(DomainError, IndexError):
    """Raised when a photon number does not fit the truncated basis."""

    def __init__(self, n: int, dim: int):
        self.n = n
        self.dim = dim
        super().__init__("n", n, f"Fock index {n} outside basis of dimension {dim}")
