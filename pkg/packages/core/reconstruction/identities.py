"""Brute-force check of the binomial series behind the channel resummation:

    sum_{m >= n} C(m, n) x^m = x^n / (1 - x)^{n+1},  |x| < 1.
"""

import math

from ..utils.errors import DomainError

MAX_ORDER = 20
TAIL_TOLERANCE = 1e-15
_MAX_TERMS = 1_000_000


def binomial_series_identity_check(n: int, x: float) -> float:
    """Absolute difference between the summed series and its closed form.

    Args:
        n: Order, 0 <= n <= 20
        x: Argument inside the radius of convergence

    Returns:
        |sum_m C(m, n) x^m - x^n / (1 - x)^{n+1}|

    Raises:
        DomainError: If |x| >= 1 or n is out of range
    """
    if not abs(x) < 1.0:
        raise DomainError("x", x, f"series diverges for |x| >= 1, got x={x}")
    if not 0 <= n <= MAX_ORDER:
        raise DomainError("n", n, f"order must be in [0, {MAX_ORDER}], got {n}")

    closed = x**n / (1.0 - x) ** (n + 1)
    if x == 0.0:
        return abs((1.0 if n == 0 else 0.0) - closed)

    terms = []
    m = n
    while m - n < _MAX_TERMS:
        term = math.comb(m, n) * x**m
        terms.append(term)
        # the ratio of consecutive terms decreases towards |x|
        ratio = abs(x) * (m + 1) / (m + 1 - n)
        if ratio < 1.0 and abs(term) * ratio / (1.0 - ratio) < TAIL_TOLERANCE:
            break
        m += 1
    return abs(math.fsum(terms) - closed)
