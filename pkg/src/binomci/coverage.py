"""Exact coverage, expected length, domination, and refinement analysis.

Non-coverage probabilities of the randomized constructions are never obtained
by sampling or by comparing solved endpoints against theta.  Instead the event
{theta > upper(y, v)} is reduced to a condition on the auxiliary value alone:

    theta > upper(y, v)   iff   v < (alpha/2 - F(y-1)) / f(y)
    theta < lower(y, v)   iff   v > (1 - alpha/2 - F(y-1)) / f(y)

with F and f evaluated at the true theta.  Summing the v-measure of these
conditions against the pmf gives the exact non-coverage, which for a uniform
auxiliary telescopes to exactly alpha/2 on both sides.  For a discrete
auxiliary the measure becomes a level count, so the same sums stay exact in
rational arithmetic.

Expected lengths marginalize per-outcome interval widths, which do not depend
on theta; the per-outcome tables are cached so curve sweeps only reweight
them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .intervals import cp_lower, cp_upper, stevens_endpoints_batch
from .numerics import (
    binom_cdf_rational,
    binom_pmf_rational,
    binom_pmf_vector,
    choose,
)
from .splitsample import SplitDesign, split_design, split_sample_interval, t_numerator

__all__ = [
    "CoverageCurve",
    "DominationReport",
    "RefinementReport",
    "default_theta_grid",
    "noncoverage_cp",
    "noncoverage_randomized_exact",
    "noncoverage_discrete_exact",
    "noncoverage_split",
    "expected_length",
    "coverage_curve",
    "domination_report",
    "refinement_check",
    "stevens_is_refinement",
    "korn_levels",
]

# Enumerating every data-randomized level visits sum_y C(n, y) = 2**n
# outcomes; keep that honest but affordable.
_KORN_ENUM_CAP = 16

METHODS = ("cp", "stevens", "stevens-general", "korn", "discrete", "split")


@dataclass(frozen=True)
class CoverageCurve:
    """Non-coverage and expected length of one method along a theta grid."""

    method: str
    n: int
    alpha: float
    thetas: np.ndarray
    upper_noncoverage: np.ndarray
    lower_noncoverage: np.ndarray
    expected_length: np.ndarray
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (len(self.thetas) == len(self.upper_noncoverage)
                == len(self.lower_noncoverage) == len(self.expected_length)):
            raise ValueError("curve columns must have matching lengths")
        if np.any(np.diff(self.thetas) <= 0):
            raise ValueError("theta grid must be strictly increasing")


@dataclass(frozen=True)
class DominationReport:
    """Containment audit of a randomized construction against Clopper-Pearson."""

    method: str
    n: int
    alpha: float
    checked: int
    contained: bool
    violations: tuple
    min_upper_slack: float
    min_lower_slack: float


@dataclass(frozen=True)
class RefinementReport:
    """Whether the split estimator's value blocks are strictly ordered in y.

    ``tie_witnesses`` lists outcomes in adjacent count blocks sharing one
    estimator value; ``inversion_witnesses`` lists adjacent blocks whose
    extremes are strictly out of order.  ``rate_anomaly`` records, per total
    count t, the small-group-heavy block maximum t / (2 n1) against the next
    block's large-group-heavy minimum (t + 1) / (2 n2) wherever the former
    formula exceeds the latter, which is the wrong-way ordering tendency of
    the statistic; entries are flagged when the loaded outcomes themselves
    fall outside the lattice.
    """

    design: SplitDesign
    is_refinement: bool
    tie_witnesses: tuple
    inversion_witnesses: tuple
    rate_anomaly: tuple


@lru_cache(maxsize=128)
def _cp_endpoints(n: int, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    lowers = np.array([cp_lower(n, y, alpha) for y in range(n + 1)])
    uppers = np.array([cp_upper(n, y, alpha) for y in range(n + 1)])
    return lowers, uppers


def default_theta_grid(n: int, alpha: float, interior: int = 999,
                       jitter: float = 1e-9) -> np.ndarray:
    """Equally spaced interior points plus the Clopper-Pearson jump locations.

    The count-based non-coverage curves are piecewise in theta with jumps
    exactly at the interval endpoints u(y) and l(y); bracketing each endpoint
    at +-jitter makes the grid see both sides of every jump.
    """
    base = np.linspace(0.0, 1.0, interior + 2)[1:-1]
    lowers, uppers = _cp_endpoints(n, alpha)
    extra = np.concatenate([lowers - jitter, lowers + jitter,
                            uppers - jitter, uppers + jitter])
    grid = np.concatenate([base, extra])
    grid = grid[(grid > 1e-12) & (grid < 1.0 - 1e-12)]
    return np.unique(grid)


def korn_levels(n: int):
    """Level-count map of the pattern-ranked auxiliary: M(y) = C(n, y)."""
    return lambda y: choose(n, y)


def _levels_fn(levels):
    if callable(levels):
        return levels
    if isinstance(levels, int):
        if levels < 1:
            raise ValueError(f"level count must be >= 1, got {levels}")
        return lambda y: levels
    raise ValueError(f"levels must be an int or a callable, got {levels!r}")


def _check_theta_open(theta) -> None:
    if not 0 <= theta <= 1:
        raise ValueError(f"theta must lie in [0, 1], got {theta!r}")


def _tail_tables(n: int, theta):
    """Per-y pairs (f(y), F(y-1)), in rational arithmetic when theta is one."""
    if isinstance(theta, Fraction):
        pmf = [binom_pmf_rational(n, theta, y) for y in range(n + 1)]
        cdf_prev = []
        acc = Fraction(0)
        for y in range(n + 1):
            cdf_prev.append(acc)
            acc += pmf[y]
        return pmf, cdf_prev
    pmf = binom_pmf_vector(n, theta)
    cdf_prev = np.concatenate([[0.0], np.cumsum(pmf)[:-1]])
    return pmf, cdf_prev


def noncoverage_cp(n: int, alpha: float, theta: float) -> tuple[float, float]:
    """Exact per-tail non-coverage of the Clopper-Pearson interval.

    Both values stay at or below alpha/2, typically strictly below: the
    discreteness of Y forces the interval to over-cover almost everywhere.
    """
    _check_theta_open(theta)
    lowers, uppers = _cp_endpoints(n, alpha)
    pmf = binom_pmf_vector(n, theta)
    upper_nc = float(pmf[uppers < theta].sum())
    lower_nc = float(pmf[lowers > theta].sum())
    return upper_nc, lower_nc


def noncoverage_randomized_exact(n: int, alpha: float, theta) -> tuple:
    """Non-coverage of the uniform-auxiliary randomized interval.

    Computed through the v-measure reduction, where each tail telescopes to
    exactly alpha/2 for every interior theta; at the boundary thetas the
    one-sided limits are returned directly.
    """
    _check_theta_open(theta)
    half = alpha / 2
    if theta == 0:
        return 0.0, float(half)
    if theta == 1:
        return float(half), 0.0
    pmf, cdf_prev = _tail_tables(n, theta)
    one_m_half = 1 - half
    upper_nc = 0.0
    lower_nc = 0.0
    for y in range(n + 1):
        f = pmf[y]
        if f == 0:
            continue
        upper_nc += min(max(half - cdf_prev[y], 0.0), f)
        lower_nc += min(max((cdf_prev[y] + f) - one_m_half, 0.0), f)
    return float(upper_nc), float(lower_nc)


def noncoverage_discrete_exact(n: int, alpha, theta, levels) -> tuple:
    """Non-coverage when the auxiliary is uniform on {1/M(y), ..., M(y)/M(y)}.

    The v-measure of each tail condition becomes a level count, computed with
    exact floor/ceil arithmetic; pass ``theta`` and ``alpha`` as Fractions to
    keep the whole sum rational.  Both tails are at or below alpha/2, and
    approach it as the level counts grow.
    """
    _check_theta_open(theta)
    level_of = _levels_fn(levels)
    half = alpha / 2
    one_m_half = 1 - half
    zero = theta * 0  # matches the arithmetic of the inputs

    def upper_count(m, f, f_prev):
        # levels w in {1/m..m/m} with w < (half - F(y-1)) / f
        x = m * (half - f_prev) / f
        return min(m, max(0, math.ceil(x) - 1))

    def lower_count(m, f, f_prev):
        # levels w~ in {0..(m-1)/m} with w~ > (1 - half - F(y-1)) / f
        x = m * (one_m_half - f_prev) / f
        return min(m, max(0, m - 1 - math.floor(x)))

    one = 1 - zero  # carries the input arithmetic (Fraction or float)
    if theta == 0:
        m = level_of(0)
        return zero, one * lower_count(m, one, zero) / m
    if theta == 1:
        m = level_of(n)
        return one * upper_count(m, one, zero) / m, zero

    pmf, cdf_prev = _tail_tables(n, theta)
    upper_nc = zero
    lower_nc = zero
    for y in range(n + 1):
        f = pmf[y]
        if f == 0:
            continue
        m = level_of(y)
        if m < 1:
            raise ValueError(f"level count must be >= 1, got {m} at y={y}")
        upper_nc += f * upper_count(m, f, cdf_prev[y]) / m
        lower_nc += f * lower_count(m, f, cdf_prev[y]) / m
    return upper_nc, lower_nc


@lru_cache(maxsize=32)
def _split_tables(design: SplitDesign, alpha: float):
    shape = (design.n1 + 1, design.n2 + 1)
    lowers = np.empty(shape)
    uppers = np.empty(shape)
    for y1 in range(design.n1 + 1):
        for y2 in range(design.n2 + 1):
            iv = split_sample_interval(y1, y2, design, alpha)
            lowers[y1, y2] = iv.lower
            uppers[y1, y2] = iv.upper
    return lowers, uppers


def noncoverage_split(design: SplitDesign, alpha: float,
                      theta: float) -> tuple[float, float]:
    """Exact per-tail non-coverage of the split-sample interval.

    Full double enumeration over the (y1, y2) lattice, with the per-outcome
    endpoints cached across calls.  Both tails are at or below alpha/2 by the
    test-inversion construction.
    """
    _check_theta_open(theta)
    lowers, uppers = _split_tables(design, alpha)
    joint = np.outer(binom_pmf_vector(design.n1, theta),
                     binom_pmf_vector(design.n2, theta))
    upper_nc = float(joint[uppers < theta].sum())
    lower_nc = float(joint[lowers > theta].sum())
    return upper_nc, lower_nc


@lru_cache(maxsize=16)
def _gl_nodes(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(nodes)
    return (x + 1.0) / 2.0, w / 2.0


@lru_cache(maxsize=64)
def _stevens_widths(n: int, alpha: float, nodes: int) -> np.ndarray:
    """Per-count interval width integrated over the auxiliary value."""
    x, w = _gl_nodes(nodes)
    ys = np.repeat(np.arange(n + 1), nodes)
    vs = np.tile(x, n + 1)
    lower, upper = stevens_endpoints_batch(n, ys, vs, vs, alpha)
    return (upper - lower).reshape(n + 1, nodes) @ w


@lru_cache(maxsize=64)
def _dual_widths(n: int, alpha: float, nodes: int) -> np.ndarray:
    """Same integral with the lower endpoint driven by 1 - v."""
    x, w = _gl_nodes(nodes)
    ys = np.repeat(np.arange(n + 1), nodes)
    vs = np.tile(x, n + 1)
    lower, upper = stevens_endpoints_batch(n, ys, 1.0 - vs, vs, alpha)
    return (upper - lower).reshape(n + 1, nodes) @ w


def _level_grid(n: int, levels) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    level_of = _levels_fn(levels)
    ys, ws, wts = [], [], []
    for y in range(n + 1):
        m = level_of(y)
        for j in range(1, m + 1):
            ys.append(y)
            ws.append(j / m)
            wts.append((j - 1) / m)
    return np.array(ys), np.array(ws), np.array(wts)


@lru_cache(maxsize=64)
def _level_widths(n: int, alpha: float, level_key) -> np.ndarray:
    """Per-count mean interval width over the discrete auxiliary levels."""
    if level_key == "korn":
        if n > _KORN_ENUM_CAP:
            raise ValueError(
                f"pattern-level enumeration visits 2**n outcomes; "
                f"n={n} exceeds the cap of {_KORN_ENUM_CAP}"
            )
        levels = korn_levels(n)
    else:
        levels = int(level_key)
    ys, ws, wts = _level_grid(n, levels)
    lower, upper = stevens_endpoints_batch(n, ys, wts, ws, alpha)
    widths = upper - lower
    out = np.empty(n + 1)
    for y in range(n + 1):
        out[y] = widths[ys == y].mean()
    return out


@lru_cache(maxsize=64)
def _cp_widths(n: int, alpha: float) -> np.ndarray:
    lowers, uppers = _cp_endpoints(n, alpha)
    return uppers - lowers


def expected_length(method: str, n: int, alpha: float, theta: float, *,
                    m_levels: int | None = None,
                    design: SplitDesign | None = None,
                    nodes: int = 64) -> float:
    """Expected interval length at theta for the given construction.

    Interval widths depend only on the outcome and the auxiliary value, never
    on theta, so each method reduces to a pmf-weighted average of a cached
    per-outcome width table: an exact sum for the count-based and split
    intervals, a fixed-order Gauss-Legendre integral over v for the uniform
    auxiliary, and an exact level average for discrete auxiliaries.
    """
    _check_theta_open(theta)
    if method == "split":
        d = design if design is not None else split_design(n)
        lowers, uppers = _split_tables(d, alpha)
        joint = np.outer(binom_pmf_vector(d.n1, theta),
                         binom_pmf_vector(d.n2, theta))
        return float((joint * (uppers - lowers)).sum())

    if method == "cp":
        widths = _cp_widths(n, alpha)
    elif method == "stevens":
        widths = _stevens_widths(n, alpha, nodes)
    elif method == "stevens-general":
        widths = _dual_widths(n, alpha, nodes)
    elif method == "korn":
        widths = _level_widths(n, alpha, "korn")
    elif method == "discrete":
        if m_levels is None:
            raise ValueError("discrete method requires m_levels")
        widths = _level_widths(n, alpha, int(m_levels))
    else:
        raise ValueError(f"unknown method {method!r}")
    return float(binom_pmf_vector(n, theta) @ widths)


def coverage_curve(method: str, n: int, alpha: float, thetas=None, *,
                   m_levels: int | None = None,
                   design: SplitDesign | None = None,
                   nodes: int = 64) -> CoverageCurve:
    """Sweep non-coverage and expected length along a theta grid."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if method == "split" and design is None:
        design = split_design(n)
    if thetas is None:
        thetas = default_theta_grid(n, alpha)
    thetas = np.asarray(thetas, dtype=np.float64)

    upper = np.empty(len(thetas))
    lower = np.empty(len(thetas))
    length = np.empty(len(thetas))
    for i, theta in enumerate(thetas):
        t = float(theta)
        if method == "cp":
            upper[i], lower[i] = noncoverage_cp(n, alpha, t)
        elif method in ("stevens", "stevens-general"):
            upper[i], lower[i] = noncoverage_randomized_exact(n, alpha, t)
        elif method == "korn":
            u, l = noncoverage_discrete_exact(n, alpha, t, korn_levels(n))
            upper[i], lower[i] = float(u), float(l)
        elif method == "discrete":
            if m_levels is None:
                raise ValueError("discrete method requires m_levels")
            u, l = noncoverage_discrete_exact(n, alpha, t, m_levels)
            upper[i], lower[i] = float(u), float(l)
        else:
            upper[i], lower[i] = noncoverage_split(design, alpha, t)
        length[i] = expected_length(method, n, alpha, t, m_levels=m_levels,
                                    design=design, nodes=nodes)

    params = {}
    if m_levels is not None:
        params["m_levels"] = m_levels
    if design is not None:
        params["design"] = (design.n1, design.n2)
    return CoverageCurve(method=method, n=n, alpha=alpha, thetas=thetas,
                         upper_noncoverage=upper, lower_noncoverage=lower,
                         expected_length=length, params=params)


def domination_report(n: int, alpha: float, v_grid=None,
                      method: str = "stevens") -> DominationReport:
    """Audit that every realized interval sits inside Clopper-Pearson.

    For the uniform-auxiliary interval the audit runs over all counts crossed
    with a v grid; for the pattern-level interval it enumerates every discrete
    level.  Slacks are the distances to the Clopper-Pearson endpoints; a
    violation beyond solver tolerance fails the audit.
    """
    if method == "stevens":
        if v_grid is None:
            v_grid = np.linspace(0.0, 1.0, 101)
        v_grid = np.asarray(v_grid, dtype=np.float64)
        ys = np.repeat(np.arange(n + 1), len(v_grid))
        vs = np.tile(v_grid, n + 1)
        lower, upper = stevens_endpoints_batch(n, ys, vs, vs, alpha)
        aux = vs
    elif method == "korn":
        if n > _KORN_ENUM_CAP:
            raise ValueError(
                f"pattern-level enumeration visits 2**n outcomes; "
                f"n={n} exceeds the cap of {_KORN_ENUM_CAP}"
            )
        ys, ws, wts = _level_grid(n, korn_levels(n))
        lower, upper = stevens_endpoints_batch(n, ys, wts, ws, alpha)
        aux = ws
    else:
        raise ValueError(f"domination audit not defined for method {method!r}")

    cp_lo, cp_up = _cp_endpoints(n, alpha)
    upper_slack = cp_up[ys] - upper
    lower_slack = lower - cp_lo[ys]
    tol = 5e-12
    bad = (upper_slack < -tol) | (lower_slack < -tol)
    violations = tuple(
        (int(y), float(v), float(us), float(ls))
        for y, v, us, ls in zip(ys[bad], aux[bad], upper_slack[bad],
                                lower_slack[bad])
    )
    return DominationReport(
        method=method,
        n=n,
        alpha=alpha,
        checked=int(len(ys)),
        contained=not bool(bad.any()),
        violations=violations[:20],
        min_upper_slack=float(upper_slack.min()),
        min_lower_slack=float(lower_slack.min()),
    )


def _block_extremes(design: SplitDesign, t: int):
    """Extreme estimator values over outcomes with total count t.

    The numerator t * n1 + y1 * (n2 - n1) is nondecreasing in y1, so the
    block minimum puts as much weight as possible on the larger group and the
    maximum on the smaller group.
    """
    y1_lo = max(0, t - design.n2)
    y1_hi = min(design.n1, t)
    denom = design.t_max
    lo_pair = (y1_lo, t - y1_lo)
    hi_pair = (y1_hi, t - y1_hi)
    lo_val = Fraction(t_numerator(design, *lo_pair), denom)
    hi_val = Fraction(t_numerator(design, *hi_pair), denom)
    return lo_pair, lo_val, hi_pair, hi_val


def refinement_check(design: SplitDesign) -> RefinementReport:
    """Decide whether the split estimator strictly refines the total count.

    A refinement requires every estimator value at total count t to be
    strictly below every value at t + 1.  Adjacent block extremes are compared
    exactly; any tie or inversion is returned with the outcomes that achieve
    it, alongside the rate anomaly of the block-extreme formulas.
    """
    n = design.n
    ties = []
    inversions = []
    for t in range(n):
        _, _, max_pair, max_val = _block_extremes(design, t)
        min_pair, min_val, _, _ = _block_extremes(design, t + 1)
        if max_val == min_val:
            ties.append((max_pair, min_pair, max_val))
        elif max_val > min_val:
            inversions.append((max_pair, max_val, min_pair, min_val))

    rate_anomaly = []
    for t in range(1, min(n, 2 * design.n1 + 1)):
        small_heavy = Fraction(t, 2 * design.n1)
        large_heavy = Fraction(t + 1, 2 * design.n2)
        if small_heavy > large_heavy:
            # the loaded outcomes (t, 0) and (0, t+1) only exist for
            # t <= n1 and t + 1 <= n2; flag formula-only entries
            in_lattice = t <= design.n1 and t + 1 <= design.n2
            rate_anomaly.append((t, small_heavy, large_heavy, in_lattice))

    return RefinementReport(
        design=design,
        is_refinement=not ties and not inversions,
        tie_witnesses=tuple(ties),
        inversion_witnesses=tuple(inversions),
        rate_anomaly=tuple(rate_anomaly),
    )


def stevens_is_refinement(n: int) -> bool:
    """The artificial statistic y + v refines the count for any n.

    With v confined to a half-open unit interval the value blocks are
    [y, y + 1): the supremum of block y is never attained and equals the
    attained minimum of block y + 1, so every value at count y lies strictly
    below every value at count y + 1.
    """
    for y in range(n):
        block_sup = y + 1.0   # open: v < 1
        next_min = float(y + 1)  # attained at v = 0
        if block_sup > next_min:
            return False
    return True
