"""Equi-tailed confidence intervals for a binomial probability.

The constructions here all invert binomial tail tests.  The Clopper-Pearson
interval inverts tests based on the count Y alone.  The randomized interval of
Stevens works with the artificial statistic Y + V for an auxiliary value v in
[0, 1]; its endpoint equations are root-solved on the tail mixture

    (1 - v) * F(y - 1) + v * F(y)

which reduces to the Clopper-Pearson equations at v in {0, 1}.  A two-variable
generalization lets the lower and upper endpoints use different auxiliary
values, and the discrete-auxiliary form plugs in values from a finite level
set, which is how data-randomized intervals are built.

Every returned interval records the inputs that produced it, so a result can
be reproduced from its own metadata.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import binom_cdf, log_choose, solve_decreasing

__all__ = [
    "Interval",
    "cp_interval",
    "stevens_interval",
    "stevens_generalized",
    "discrete_aux_interval",
    "stevens_lower",
    "stevens_upper",
    "stevens_endpoints_batch",
]

_SOLVER_TOL = 1e-12
_BATCH_ITERS = 48  # bracket width 2**-48 ~ 3.6e-15, below the scalar tolerance


@dataclass(frozen=True)
class Interval:
    """A closed subinterval of [0, 1] with its construction metadata.

    ``crossed`` marks the one construction (independent lower and upper
    auxiliary values) whose raw endpoints can arrive out of order; the pair is
    then reported as computed instead of being silently reordered.
    """

    lower: float
    upper: float
    method: str
    inputs: dict = field(default_factory=dict)
    crossed: bool = False

    def __post_init__(self):
        if not (0.0 <= self.lower <= 1.0 and 0.0 <= self.upper <= 1.0):
            raise ValueError(f"endpoints outside [0, 1]: {self.lower}, {self.upper}")
        if not self.crossed and self.lower > self.upper:
            raise ValueError(f"lower {self.lower} exceeds upper {self.upper}")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, theta: float) -> bool:
        return self.lower <= theta <= self.upper

    def as_tuple(self) -> tuple[float, float]:
        return (self.lower, self.upper)


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")


def _check_count(n: int, y: int) -> None:
    if not 0 <= y <= n:
        raise ValueError(f"y must lie in [0, {n}], got {y}")


def _check_aux(v: float, name: str = "v") -> None:
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {v!r}")


def _mix_tail(n: int, theta: float, y: int, v: float) -> float:
    """P(Y + V <= y + v) = (1 - v) F(y - 1) + v F(y); decreasing in theta."""
    return (1.0 - v) * binom_cdf(n, theta, y - 1) + v * binom_cdf(n, theta, y)


def cp_upper(n: int, y: int, alpha: float) -> float:
    if y == n:
        return 1.0
    return solve_decreasing(lambda t: binom_cdf(n, t, y), alpha / 2.0, tol=_SOLVER_TOL)


def cp_lower(n: int, y: int, alpha: float) -> float:
    if y == 0:
        return 0.0
    return solve_decreasing(
        lambda t: binom_cdf(n, t, y - 1), 1.0 - alpha / 2.0, tol=_SOLVER_TOL
    )


def cp_interval(n: int, y: int, alpha: float) -> Interval:
    """Clopper-Pearson 1 - alpha interval for the observed count y."""
    _check_count(n, y)
    _check_alpha(alpha)
    return Interval(
        lower=cp_lower(n, y, alpha),
        upper=cp_upper(n, y, alpha),
        method="cp",
        inputs={"n": n, "y": y, "alpha": alpha},
    )


def stevens_upper(n: int, y: int, v: float, alpha: float) -> float:
    """Upper endpoint of the randomized interval at auxiliary value v.

    The root of the tail mixture leaves [0, 1] in two corners, where the
    endpoint saturates: at y = n the upper endpoint is 1 once v >= alpha/2,
    and at y = 0 it is 0 while v <= alpha/2 (the realized interval collapses
    toward {0}; the corresponding event has probability exactly alpha/2 under
    a uniform V, which is what exact equi-tailed coverage requires).
    """
    half = alpha / 2.0
    if y == n and v >= half:
        return 1.0
    if y == 0 and v <= half:
        return 0.0
    return solve_decreasing(lambda t: _mix_tail(n, t, y, v), half, tol=_SOLVER_TOL)


def stevens_lower(n: int, y: int, v: float, alpha: float) -> float:
    """Lower endpoint of the randomized interval at auxiliary value v.

    Mirror image of :func:`stevens_upper`: saturates at 0 for y = 0 with
    v <= 1 - alpha/2 and at 1 for y = n with v >= 1 - alpha/2.
    """
    target = 1.0 - alpha / 2.0
    if y == 0 and v <= target:
        return 0.0
    if y == n and v >= target:
        return 1.0
    return solve_decreasing(lambda t: _mix_tail(n, t, y, v), target, tol=_SOLVER_TOL)


def stevens_interval(n: int, y: int, v: float, alpha: float) -> Interval:
    """Randomized interval from the artificial statistic y + v.

    Contained in the Clopper-Pearson interval for every (y, v); reduces to it
    exactly at the appropriate v in {0, 1}.
    """
    _check_count(n, y)
    _check_alpha(alpha)
    _check_aux(v)
    return Interval(
        lower=stevens_lower(n, y, v, alpha),
        upper=stevens_upper(n, y, v, alpha),
        method="stevens",
        inputs={"n": n, "y": y, "v": v, "alpha": alpha},
    )


def stevens_generalized(n: int, y: int, v_lower: float, v_upper: float,
                        alpha: float) -> Interval:
    """Randomized interval with independent lower and upper auxiliary values.

    With unrelated v_lower and v_upper the raw endpoints can cross in extreme
    corners (large alpha, v_lower near 1 and v_upper near 0).  The pair is
    returned as computed with ``crossed=True`` rather than clamped, since the
    construction is a theoretical device and hiding the crossing would
    misrepresent it.
    """
    _check_count(n, y)
    _check_alpha(alpha)
    _check_aux(v_lower, "v_lower")
    _check_aux(v_upper, "v_upper")
    lower = stevens_lower(n, y, v_lower, alpha)
    upper = stevens_upper(n, y, v_upper, alpha)
    return Interval(
        lower=lower,
        upper=upper,
        method="stevens-general",
        inputs={"n": n, "y": y, "v_lower": v_lower, "v_upper": v_upper,
                "alpha": alpha},
        crossed=lower > upper,
    )


def discrete_aux_interval(n: int, y: int, w: float, w_tilde: float,
                          alpha: float) -> Interval:
    """Randomized interval driven by a discrete auxiliary level pair.

    w is a level in (0, 1] used for the upper endpoint and w_tilde, one level
    step below it in [0, 1), drives the lower endpoint.  Using the lower
    companion for the lower endpoint is what keeps both tail bounds valid.
    """
    _check_count(n, y)
    _check_alpha(alpha)
    if not 0.0 < w <= 1.0:
        raise ValueError(f"w must lie in (0, 1], got {w!r}")
    if not 0.0 <= w_tilde < 1.0:
        raise ValueError(f"w_tilde must lie in [0, 1), got {w_tilde!r}")
    if w_tilde >= w:
        raise ValueError(f"w_tilde ({w_tilde!r}) must be below w ({w!r})")
    return Interval(
        lower=stevens_lower(n, y, w_tilde, alpha),
        upper=stevens_upper(n, y, w, alpha),
        method="discrete",
        inputs={"n": n, "y": y, "w": w, "w_tilde": w_tilde, "alpha": alpha},
    )


def _log_choose_row(n: int) -> np.ndarray:
    return np.array([log_choose(n, j) for j in range(n + 1)])


def _mix_tail_batch(n: int, theta: np.ndarray, ys: np.ndarray,
                    vs: np.ndarray, logc: np.ndarray) -> np.ndarray:
    # theta strictly interior here: bisection only evaluates midpoints.
    js = np.arange(n + 1)
    log_terms = (
        logc[None, :]
        + js[None, :] * np.log(theta)[:, None]
        + (n - js)[None, :] * np.log1p(-theta)[:, None]
    )
    cdf = np.cumsum(np.exp(log_terms), axis=1)
    rows = np.arange(len(ys))
    f_y = cdf[rows, ys]
    f_ym1 = np.where(ys > 0, cdf[rows, np.maximum(ys - 1, 0)], 0.0)
    return (1.0 - vs) * f_ym1 + vs * f_y


def _solve_mix_batch(n: int, ys: np.ndarray, vs: np.ndarray, target: float,
                     logc: np.ndarray) -> np.ndarray:
    lo = np.zeros(len(ys))
    hi = np.ones(len(ys))
    for _ in range(_BATCH_ITERS):
        mid = 0.5 * (lo + hi)
        ge = _mix_tail_batch(n, mid, ys, vs, logc) >= target
        lo = np.where(ge, mid, lo)
        hi = np.where(ge, hi, mid)
    return 0.5 * (lo + hi)


def stevens_endpoints_batch(n: int, ys, vs_lower, vs_upper,
                            alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized randomized-interval endpoints.

    Solves the same endpoint equations as :func:`stevens_lower` and
    :func:`stevens_upper`, with identical saturation rules, but bisects whole
    arrays at once.  This is what makes exhaustive domination sweeps, level
    enumerations, and long simulation runs affordable; results agree with the
    scalar path to solver tolerance.
    """
    _check_alpha(alpha)
    ys = np.asarray(ys, dtype=np.int64)
    vl = np.asarray(vs_lower, dtype=np.float64)
    vu = np.asarray(vs_upper, dtype=np.float64)
    if not (ys.shape == vl.shape == vu.shape):
        raise ValueError("ys, vs_lower and vs_upper must have matching shapes")
    if ys.size and not (0 <= ys.min() and ys.max() <= n):
        raise ValueError("counts outside [0, n]")
    for arr, name in ((vl, "vs_lower"), (vu, "vs_upper")):
        if arr.size and not (arr.min() >= 0.0 and arr.max() <= 1.0):
            raise ValueError(f"{name} outside [0, 1]")

    half = alpha / 2.0
    logc = _log_choose_row(n)

    upper = np.empty(len(ys))
    sat_one = (ys == n) & (vu >= half)
    sat_zero = (ys == 0) & (vu <= half)
    upper[sat_one] = 1.0
    upper[sat_zero] = 0.0
    todo = ~(sat_one | sat_zero)
    if todo.any():
        upper[todo] = _solve_mix_batch(n, ys[todo], vu[todo], half, logc)

    lower = np.empty(len(ys))
    target = 1.0 - half
    sat_zero = (ys == 0) & (vl <= target)
    sat_one = (ys == n) & (vl >= target)
    lower[sat_zero] = 0.0
    lower[sat_one] = 1.0
    todo = ~(sat_zero | sat_one)
    if todo.any():
        lower[todo] = _solve_mix_batch(n, ys[todo], vl[todo], target, logc)

    return lower, upper
