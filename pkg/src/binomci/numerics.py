"""Binomial probability kernels, exact combinatorics, and a bisection solver.

Everything here is a pure function of its arguments and safe to call from any
number of threads.  These are the primitives behind every interval
construction and every coverage computation in the package.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

__all__ = [
    "MAX_N",
    "BracketError",
    "binom_pmf",
    "binom_cdf",
    "binom_pmf_vector",
    "binom_pmf_rational",
    "binom_cdf_rational",
    "choose",
    "log_choose",
    "solve_decreasing",
]

# Desk-scale cap on the trial count.  Keeps log-space kernels far from
# double overflow and lets subset counts fit in int64 (C(64, 32) < 2**63).
MAX_N = 64


class BracketError(ValueError):
    """Raised when a root bracket does not straddle the target value."""


def _check_model(n: int, theta) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n > MAX_N:
        raise ValueError(f"n={n} exceeds the supported cap of {MAX_N} trials")
    if not 0 <= theta <= 1:
        raise ValueError(f"theta must lie in [0, 1], got {theta!r}")


def log_choose(n: int, k: int) -> float:
    """log of the binomial coefficient, via log-gamma."""
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def binom_pmf(n: int, theta: float, y: int) -> float:
    """P(Y = y) for Y ~ Binomial(n, theta).

    Evaluated in log space (log-gamma accumulation, not factorials) so that
    the full supported range of n stays well conditioned.
    """
    _check_model(n, theta)
    if not 0 <= y <= n:
        raise ValueError(f"y must lie in [0, {n}], got {y}")
    if theta == 0:
        return 1.0 if y == 0 else 0.0
    if theta == 1:
        return 1.0 if y == n else 0.0
    log_p = log_choose(n, y) + y * math.log(theta) + (n - y) * math.log1p(-theta)
    return math.exp(log_p)


def binom_cdf(n: int, theta: float, y: int) -> float:
    """P(Y <= y) for Y ~ Binomial(n, theta).

    The conventions F(-1) = 0 and F(n) = 1 are part of the contract; they let
    endpoint equations treat y = 0 and y = n without special cases.
    """
    _check_model(n, theta)
    if not -1 <= y <= n:
        raise ValueError(f"y must lie in [-1, {n}], got {y}")
    if y == -1:
        return 0.0
    if y == n:
        return 1.0
    if theta == 0:
        return 1.0
    if theta == 1:
        return 0.0
    log_t = math.log(theta)
    log_1mt = math.log1p(-theta)
    total = 0.0
    for j in range(y + 1):
        total += math.exp(log_choose(n, j) + j * log_t + (n - j) * log_1mt)
    return min(total, 1.0)


def binom_pmf_vector(n: int, theta: float) -> np.ndarray:
    """The full pmf row (f(0), ..., f(n)) as an array; same kernel as above."""
    _check_model(n, theta)
    row = np.zeros(n + 1)
    if theta == 0:
        row[0] = 1.0
        return row
    if theta == 1:
        row[n] = 1.0
        return row
    js = np.arange(n + 1)
    logc = np.array([log_choose(n, j) for j in range(n + 1)])
    return np.exp(logc + js * math.log(theta) + (n - js) * math.log1p(-theta))


def binom_pmf_rational(n: int, theta: Fraction, y: int) -> Fraction:
    """Exact rational pmf, for level-counting arguments that must not round."""
    _check_model(n, theta)
    if not 0 <= y <= n:
        raise ValueError(f"y must lie in [0, {n}], got {y}")
    theta = Fraction(theta)
    return Fraction(math.comb(n, y)) * theta**y * (1 - theta) ** (n - y)


def binom_cdf_rational(n: int, theta: Fraction, y: int) -> Fraction:
    """Exact rational cdf with the same F(-1) = 0, F(n) = 1 conventions."""
    if y == -1:
        return Fraction(0)
    if y == n:
        return Fraction(1)
    return sum(binom_pmf_rational(n, theta, j) for j in range(y + 1))


def choose(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k) for 0 <= k <= n <= MAX_N."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"n must be an integer, got {n!r}")
    if not 0 <= n <= MAX_N:
        raise ValueError(f"n must lie in [0, {MAX_N}], got {n}")
    if not isinstance(k, int) or isinstance(k, bool):
        raise ValueError(f"k must be an integer, got {k!r}")
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, {n}], got {k}")
    return math.comb(n, k)


def solve_decreasing(f, target: float, lo: float = 0.0, hi: float = 1.0,
                     tol: float = 1e-12, max_iter: int = 200) -> float:
    """Invert a continuous strictly decreasing function by bisection.

    Requires f(lo) >= target >= f(hi).  Bisection is deliberate: the tail
    functions this inverts have unbounded derivatives near 0 and 1, where
    faster local methods are not safe.  The bracket is shrunk until its width
    is at most ``tol`` and the midpoint is returned, so the result is
    deterministic in the inputs.
    """
    if not lo < hi:
        raise ValueError(f"empty bracket [{lo}, {hi}]")
    f_lo = f(lo)
    f_hi = f(hi)
    if not (f_lo >= target >= f_hi):
        raise BracketError(
            f"bracket does not straddle target: f({lo})={f_lo}, "
            f"f({hi})={f_hi}, target={target}"
        )
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if f(mid) >= target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
