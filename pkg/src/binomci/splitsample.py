"""Intervals from splitting the trials into two coprime groups.

The n trials are divided into groups of sizes n1 and n2 that are relatively
prime and as close as possible, and the estimator is the plain average of the
two group proportions,

    (y1 / n1 + y2 / n2) / 2.

Because gcd(n1, n2) = 1 this statistic takes many more values than y / n, and
inverting its tail tests gives another interval that behaves like a
data-randomized one.  All orderings and ties are decided on the exact integer
numerator y1 * n2 + y2 * n1 (the statistic times 2 * n1 * n2); no
floating-point comparison ever touches a tie.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .intervals import Interval, _check_alpha
from .numerics import binom_pmf_vector, solve_decreasing

__all__ = [
    "SplitDesign",
    "split_design",
    "t_numerator",
    "split_sample_cdf",
    "split_sample_interval",
    "thetahat_support",
]

_SOLVER_TOL = 1e-12


@dataclass(frozen=True)
class SplitDesign:
    """A coprime two-group split with n1 <= n2."""

    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError("group sizes must be positive")
        if self.n1 > self.n2:
            raise ValueError("expected n1 <= n2")
        if math.gcd(self.n1, self.n2) != 1:
            raise ValueError(f"group sizes {self.n1}, {self.n2} are not coprime")

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    @property
    def t_max(self) -> int:
        return 2 * self.n1 * self.n2


def split_design(n: int) -> SplitDesign:
    """Most balanced coprime split of n trials.

    Scans k = floor(n/2) downward and returns the first k with
    gcd(k, n - k) = 1, so the result is deterministic and the difference
    |n1 - n2| is minimal among coprime splits.
    """
    if n < 3:
        raise ValueError(f"need at least 3 trials for a two-group split, got {n}")
    for k in range(n // 2, 0, -1):
        if math.gcd(k, n - k) == 1:
            return SplitDesign(n1=k, n2=n - k)
    raise AssertionError("unreachable: (1, n - 1) is always coprime")


def t_numerator(design: SplitDesign, y1: int, y2: int) -> int:
    """Integer numerator y1 * n2 + y2 * n1 of the split estimator."""
    return y1 * design.n2 + y2 * design.n1


def _check_pair(design: SplitDesign, y1: int, y2: int) -> None:
    if not 0 <= y1 <= design.n1:
        raise ValueError(f"y1 must lie in [0, {design.n1}], got {y1}")
    if not 0 <= y2 <= design.n2:
        raise ValueError(f"y2 must lie in [0, {design.n2}], got {y2}")


def split_sample_cdf(design: SplitDesign, theta: float, t_num: int) -> float:
    """P(Y1 * n2 + Y2 * n1 <= t_num), decreasing in theta below the maximum.

    Computed as an exact double sum over the qualifying lattice: for each y1
    the admissible y2 range is an integer cutoff, so one pass over y1 against
    the cumulative pmf of Y2 covers every pair.
    """
    n1, n2 = design.n1, design.n2
    pmf1 = binom_pmf_vector(n1, theta)
    cdf2 = np.cumsum(binom_pmf_vector(n2, theta))
    total = 0.0
    for y1 in range(n1 + 1):
        headroom = t_num - y1 * n2
        if headroom < 0:
            continue
        y2_max = min(n2, headroom // n1)
        total += pmf1[y1] * cdf2[y2_max]
    return min(total, 1.0)


def split_sample_interval(y1: int, y2: int, design: SplitDesign,
                          alpha: float) -> Interval:
    """Equi-tailed interval from inverting tail tests of the split estimator.

    The upper endpoint solves P(T <= t_obs) = alpha/2 and the lower endpoint
    P(T >= t_obs) = alpha/2, with the same saturation conventions as the
    count-based interval: upper 1 at the all-ones outcome, lower 0 at the
    all-zeros outcome.
    """
    _check_pair(design, y1, y2)
    _check_alpha(alpha)
    t_obs = t_numerator(design, y1, y2)
    half = alpha / 2.0

    if (y1, y2) == (design.n1, design.n2):
        upper = 1.0
    else:
        upper = solve_decreasing(
            lambda t: split_sample_cdf(design, t, t_obs), half, tol=_SOLVER_TOL
        )

    if (y1, y2) == (0, 0):
        lower = 0.0
    else:
        # P(T >= t) = 1 - P(T <= t - 1); T is integer-valued so t - 1 is exact.
        lower = solve_decreasing(
            lambda t: split_sample_cdf(design, t, t_obs - 1),
            1.0 - half,
            tol=_SOLVER_TOL,
        )

    return Interval(
        lower=lower,
        upper=upper,
        method="split",
        inputs={
            "n1": design.n1,
            "n2": design.n2,
            "y1": y1,
            "y2": y2,
            "t_numerator": t_obs,
            "alpha": alpha,
        },
    )


@lru_cache(maxsize=32)
def thetahat_support(design: SplitDesign) -> frozenset[Fraction]:
    """Distinct values of the split estimator, deduplicated exactly."""
    denom = design.t_max
    return frozenset(
        Fraction(t_numerator(design, y1, y2), denom)
        for y1 in range(design.n1 + 1)
        for y2 in range(design.n2 + 1)
    )
