"""The J-, J+ and J3 superoperators acting on truncated density matrices.

J- rho = a rho a^dagger, J+ rho = a^dagger rho a,
J3 rho = a^dagger a rho + rho a^dagger a + rho.

In the Fock basis these are index shifts with square-root weights, so they
are applied by slicing rather than by matrix products.
"""

from typing import Callable

import numpy as np


def _sqrt_n(dim: int) -> np.ndarray:
    return np.sqrt(np.arange(dim, dtype=float))


def j_minus(x: np.ndarray) -> np.ndarray:
    """(J- x)[m, k] = sqrt((m+1)(k+1)) x[m+1, k+1]."""
    dim = x.shape[0]
    s = _sqrt_n(dim)[1:]
    out = np.zeros_like(x)
    out[:-1, :-1] = x[1:, 1:] * np.outer(s, s)
    return out


def j_plus(x: np.ndarray) -> np.ndarray:
    """(J+ x)[m, k] = sqrt(m k) x[m-1, k-1]; weight pushed past the cut-off is dropped."""
    dim = x.shape[0]
    s = _sqrt_n(dim)[1:]
    out = np.zeros_like(x)
    out[1:, 1:] = x[:-1, :-1] * np.outer(s, s)
    return out


def j_three(x: np.ndarray) -> np.ndarray:
    """(J3 x)[m, k] = (m + k + 1) x[m, k]."""
    idx = np.arange(x.shape[0], dtype=float)
    return (idx[:, None] + idx[None, :] + 1.0) * x


def j_three_power(x: np.ndarray, base: float, log_scale: float = 0.0) -> np.ndarray:
    """e^{log_scale} base^J3 x, i.e. entry (m, k) scaled by e^{log_scale} base^(m+k+1).

    The scale is applied in the exponent so a large e^{log_scale} against a
    small base cannot overflow. base must be positive.
    """
    idx = np.arange(x.shape[0], dtype=float)
    return np.exp(log_scale + (idx[:, None] + idx[None, :] + 1.0) * np.log(base)) * x


def exp_shift_series(
    x: np.ndarray,
    coefficient: float,
    shift: Callable[[np.ndarray], np.ndarray],
    term_tolerance: float = 1e-16,
) -> tuple[np.ndarray, int]:
    """Sum exp(coefficient * J) x for J = j_minus or j_plus.

    The series stops once the next term's max-norm falls below
    ``term_tolerance``; J shifts Fock indices, so at most ``dim`` terms are
    non-zero on a truncated matrix.

    Returns:
        (result, number of terms added)
    """
    total = x.copy()
    if coefficient == 0.0:
        return total, 1
    term = x
    terms = 1
    for j in range(1, x.shape[0] + 1):
        term = shift(term) * (coefficient / j)
        if np.max(np.abs(term)) < term_tolerance:
            break
        total = total + term
        terms += 1
    return total, terms


def commutation_residuals(x: np.ndarray) -> tuple[float, float, float]:
    """Max-norm residuals of [J-,J+] = J3, [J3,J+] = 2J+ and [J3,J-] = -2J-.

    Truncation breaks [J-,J+] = J3 on the last row and column only, so that
    residual is measured on the block that excludes them.
    """
    lowered = j_minus(j_plus(x)) - j_plus(j_minus(x)) - j_three(x)
    raised = j_three(j_plus(x)) - j_plus(j_three(x)) - 2.0 * j_plus(x)
    lowering = j_three(j_minus(x)) - j_minus(j_three(x)) + 2.0 * j_minus(x)
    return (
        float(np.max(np.abs(lowered[:-1, :-1]))),
        float(np.max(np.abs(raised))),
        float(np.max(np.abs(lowering))),
    )
