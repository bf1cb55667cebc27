"""Long-run behavior of randomized intervals under repeated experiments.

Each repetition draws a fresh binomial count and pairs it with the next value
of an auxiliary source, which may be truly seeded-random, pseudorandom (Weyl),
quasi-random (van der Corput), or periodic.  The run tracks the proportions of
repetitions whose interval misses theta on each side and the average interval
length.

The miss indicators are evaluated through the same v-measure reduction the
exact analysis uses (theta > upper(y, v) iff v is below an explicit threshold
that depends only on y), so no root-finding error enters the proportions;
endpoints are solved in bulk only to report lengths.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .intervals import stevens_endpoints_batch
from .numerics import binom_pmf_vector

__all__ = ["SimulationReport", "longrun_simulate"]


@dataclass(frozen=True)
class SimulationReport:
    """Checkpointed running proportions and lengths of one simulation run."""

    source: dict
    n: int
    alpha: float
    theta: float
    m: int
    seed: int
    checkpoints: np.ndarray
    upper_proportions: np.ndarray
    lower_proportions: np.ndarray
    running_lengths: np.ndarray
    final_upper_proportion: float
    final_lower_proportion: float
    average_length: float
    params: dict = field(default_factory=dict)


def _miss_thresholds(n: int, alpha: float, theta: float):
    """Per-count v-thresholds for the two miss events at the true theta."""
    pmf = binom_pmf_vector(n, theta)
    cdf_prev = np.concatenate([[0.0], np.cumsum(pmf)[:-1]])
    upper_thresh = (alpha / 2.0 - cdf_prev) / pmf
    lower_thresh = (1.0 - alpha / 2.0 - cdf_prev) / pmf
    return upper_thresh, lower_thresh


def longrun_simulate(source, n: int, alpha: float, theta: float, m: int,
                     seed: int, checkpoints: int = 100,
                     with_lengths: bool = True) -> SimulationReport:
    """Simulate m repetitions of the randomized interval against theta.

    The counts are drawn from a seeded PCG64 generator, so a run is fully
    reproducible from (source description, seed, m, n, alpha, theta).  For a
    pair-emitting periodic source the upper endpoint uses w and the lower
    endpoint its companion w - 1/N; every other source drives both endpoints
    with the same value.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if not 0.0 < theta < 1.0:
        raise ValueError(f"theta must lie in (0, 1), got {theta!r}")
    descriptor = source.describe()

    rng = np.random.Generator(np.random.PCG64(seed))
    ys = rng.binomial(n, theta, size=m)

    if getattr(source, "emits_pairs", False):
        vs_upper, vs_lower = source.take(m)
    else:
        vs_upper = source.take(m)
        vs_lower = vs_upper

    upper_thresh, lower_thresh = _miss_thresholds(n, alpha, theta)
    upper_miss = vs_upper < upper_thresh[ys]
    lower_miss = vs_lower > lower_thresh[ys]

    step = max(1, m // checkpoints)
    marks = np.arange(step, m + 1, step)
    if marks[-1] != m:
        marks = np.append(marks, m)

    counts = np.arange(1, m + 1, dtype=np.float64)
    upper_running = np.cumsum(upper_miss) / counts
    lower_running = np.cumsum(lower_miss) / counts

    if with_lengths:
        lower_ep, upper_ep = stevens_endpoints_batch(
            n, ys, vs_lower, vs_upper, alpha
        )
        lengths_running = np.cumsum(upper_ep - lower_ep) / counts
    else:
        lengths_running = np.full(m, np.nan)

    return SimulationReport(
        source=descriptor,
        n=n,
        alpha=alpha,
        theta=theta,
        m=m,
        seed=seed,
        checkpoints=marks,
        upper_proportions=upper_running[marks - 1],
        lower_proportions=lower_running[marks - 1],
        running_lengths=lengths_running[marks - 1],
        final_upper_proportion=float(upper_running[-1]),
        final_lower_proportion=float(lower_running[-1]),
        average_length=float(lengths_running[-1]),
    )
