"""Data-randomized auxiliary values derived from the ones-pattern.

Conditional on the total count y, the C(n, y) possible placements of the ones
are put in bijection with {1, ..., C(n, y)}: patterns are ordered by ascending
sum of their one-positions, with ties broken lexicographically on the sorted
position tuple.  Patterns whose ones sit near the start of the sequence rank
first.  The level W = rank / C(n, y) is then uniform on {1/C, ..., C/C}
conditional on y, and the companion W - 1/C drives the lower endpoint.

Ranks are computed by counting, not enumeration: a cached subset-sum table
gives the number of y-subsets of {1..n} below the observed pattern in the
ordering, so a rank among trillions of patterns costs the same as one among
ten.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .intervals import Interval, discrete_aux_interval
from .numerics import MAX_N, choose

__all__ = ["KornRank", "korn_rank", "korn_interval"]


@dataclass(frozen=True)
class KornRank:
    """Exact rank of a ones-pattern among its C(n, y) peers."""

    rank: int
    count: int

    def __post_init__(self):
        if not 1 <= self.rank <= self.count:
            raise ValueError(f"rank {self.rank} outside [1, {self.count}]")

    @property
    def w(self) -> Fraction:
        return Fraction(self.rank, self.count)

    @property
    def w_tilde(self) -> Fraction:
        return Fraction(self.rank - 1, self.count)


def _check_bits(bits) -> list[int]:
    bits = list(bits)
    if not 1 <= len(bits) <= MAX_N:
        raise ValueError(f"sequence length must lie in [1, {MAX_N}], got {len(bits)}")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("sequence entries must be 0 or 1")
    return bits


@lru_cache(maxsize=4)
def _subset_sum_counts(n: int) -> np.ndarray:
    """counts[m, k, s] = number of k-subsets of {1..m} with element sum s.

    int64 is exact here: every entry is at most C(n, k) <= C(64, 32) < 2**63.
    """
    s_max = n * (n + 1) // 2
    counts = np.zeros((n + 1, n + 1, s_max + 1), dtype=np.int64)
    counts[:, 0, 0] = 1
    for m in range(1, n + 1):
        counts[m] = counts[m - 1]
        counts[m, 1:, m:] += counts[m - 1, : n, : s_max + 1 - m]
    return counts


def korn_rank(bits) -> KornRank:
    """Rank the ones-pattern of a 0/1 sequence under the canonical ordering."""
    bits = _check_bits(bits)
    n = len(bits)
    positions = [i + 1 for i, b in enumerate(bits) if b == 1]
    y = len(positions)
    count = choose(n, y)
    if y == 0 or y == n:
        return KornRank(rank=1, count=1)

    counts = _subset_sum_counts(n)
    s_obs = sum(positions)

    # Patterns with a strictly smaller position sum all precede this one.
    ahead = int(counts[n, y, :s_obs].sum())

    # Equal-sum patterns that are lexicographically smaller: walk the prefix,
    # substituting each admissible smaller value and counting completions
    # drawn from the remaining larger positions.
    prefix_sum = 0
    prev = 0
    for i, p in enumerate(positions):
        remaining = y - i - 1
        for c in range(prev + 1, p):
            need = s_obs - prefix_sum - c
            # subsets of {c+1..n}: shift down by c so the table applies
            shifted = need - remaining * c
            if remaining <= n - c and 0 <= shifted <= n * (n + 1) // 2:
                ahead += int(counts[n - c, remaining, shifted])
        prefix_sum += p
        prev = p

    return KornRank(rank=1 + ahead, count=count)


def korn_interval(bits, alpha: float) -> Interval:
    """Data-randomized interval: the discrete-auxiliary interval at (W, W~).

    The auxiliary level is a deterministic function of the data, so two
    analysts holding the same sequence produce the same interval.
    """
    bits = _check_bits(bits)
    n = len(bits)
    y = sum(bits)
    ranked = korn_rank(bits)
    base = discrete_aux_interval(
        n, y, float(ranked.w), float(ranked.w_tilde), alpha
    )
    return Interval(
        lower=base.lower,
        upper=base.upper,
        method="korn",
        inputs={
            "n": n,
            "y": y,
            "alpha": alpha,
            "bits": "".join(str(b) for b in bits),
            "rank": ranked.rank,
            "count": ranked.count,
        },
    )
