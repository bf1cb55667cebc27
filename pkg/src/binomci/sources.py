"""Auxiliary-value sources for randomized and pseudorandomized intervals.

Four mechanisms are provided: seeded uniform draws, Weyl sequences (fractional
parts of multiples of an irrational), van der Corput radical-inverse sequences,
and periodic permutation sequences that cycle through {1/N, ..., N/N} in a
fixed order.  Every source declares which half-open range convention its
output satisfies and checks that declaration on each emission.

A source instance is a sequential, stateful generator: it may be moved between
threads but must not be mutated concurrently.  Independent instances are
independent.
"""

from __future__ import annotations

import math
import random

import numpy as np

__all__ = [
    "SQRT2",
    "weyl",
    "van_der_corput",
    "periodic_perm",
    "UniformSource",
    "WeylSource",
    "VanDerCorputSource",
    "PeriodicPermSource",
    "source_from_spec",
]

SQRT2 = math.sqrt(2.0)


def weyl(lam: float, k: int) -> float:
    """Fractional part of k * lam, in [0, 1).

    Equidistributes when lam is irrational.  Irrationality is not machine
    checkable; the caller supplies it as an assumption (the package default is
    sqrt(2)).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return math.fmod(k * lam, 1.0)


def van_der_corput(k: int, base: int = 2) -> float:
    """Radical inverse of k in the given base, in [0, 1)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    value = 0.0
    denom = 1.0
    j = k
    while j > 0:
        j, digit = divmod(j, base)
        denom *= base
        value += digit / denom
    return value


def _check_perm(n_period: int, perm) -> tuple[int, ...]:
    perm = tuple(perm)
    if sorted(perm) != list(range(1, n_period + 1)):
        raise ValueError(f"perm must be a permutation of 1..{n_period}, got {perm}")
    return perm


def periodic_perm(n_period: int, perm, k: int) -> tuple[float, float]:
    """k-th pair (w, w - 1/N) of a period-N permutation sequence.

    w runs through perm[1]/N, ..., perm[N]/N and repeats, so w is in (0, 1]
    and the companion value w - 1/N is in [0, 1).
    """
    if n_period < 2:
        raise ValueError(f"period must be >= 2, got {n_period}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    perm = _check_perm(n_period, perm)
    w = perm[(k - 1) % n_period] / n_period
    return w, w - 1.0 / n_period


class _SourceBase:
    """Shared bookkeeping: position counter and range-convention checks."""

    kind = "abstract"
    emits_pairs = False

    def __init__(self):
        self.position = 0

    def _check_range(self, x: float, low_open: bool, high_open: bool) -> float:
        ok_low = x > 0.0 if low_open else x >= 0.0
        ok_high = x < 1.0 if high_open else x <= 1.0
        if not (ok_low and ok_high):
            raise RuntimeError(
                f"{self.kind} source emitted {x!r} outside its declared range"
            )
        return x

    def describe(self) -> dict:
        raise NotImplementedError


class UniformSource(_SourceBase):
    """Seeded uniform draws on the open interval (0, 1).

    Backed by ``random.Random`` (the Mersenne Twister), which is portable and
    bit-reproducible for a fixed seed across platforms.  A drawn 0.0 is
    rejected and redrawn so both endpoints are excluded.
    """

    kind = "uniform"

    def __init__(self, seed: int):
        super().__init__()
        self.seed = int(seed)
        self._rng = random.Random(self.seed)

    def next_value(self) -> float:
        x = self._rng.random()
        while x == 0.0:
            x = self._rng.random()
        self.position += 1
        return self._check_range(x, low_open=True, high_open=True)

    def take(self, m: int) -> np.ndarray:
        return np.array([self.next_value() for _ in range(m)])

    def describe(self) -> dict:
        return {"kind": self.kind, "seed": self.seed, "position": self.position}


class WeylSource(_SourceBase):
    """Deterministic pseudorandom sequence {k * lam}, values in [0, 1)."""

    kind = "weyl"

    def __init__(self, lam: float = SQRT2):
        super().__init__()
        self.lam = float(lam)

    def next_value(self) -> float:
        self.position += 1
        return self._check_range(
            weyl(self.lam, self.position), low_open=False, high_open=True
        )

    def take(self, m: int) -> np.ndarray:
        return np.array([self.next_value() for _ in range(m)])

    def describe(self) -> dict:
        return {"kind": self.kind, "lambda": self.lam, "position": self.position}


class VanDerCorputSource(_SourceBase):
    """Quasi-random radical-inverse sequence, values in [0, 1)."""

    kind = "van_der_corput"

    def __init__(self, base: int = 2):
        super().__init__()
        if base < 2:
            raise ValueError(f"base must be >= 2, got {base}")
        self.base = int(base)

    def next_value(self) -> float:
        self.position += 1
        return self._check_range(
            van_der_corput(self.position, self.base), low_open=False, high_open=True
        )

    def take(self, m: int) -> np.ndarray:
        return np.array([self.next_value() for _ in range(m)])

    def describe(self) -> dict:
        return {"kind": self.kind, "base": self.base, "position": self.position}


class PeriodicPermSource(_SourceBase):
    """Period-N permutation sequence emitting pairs (w, w - 1/N).

    w is in (0, 1] and w - 1/N is in [0, 1); over any N consecutive steps the
    w values are exactly the multiset {1/N, ..., N/N}.
    """

    kind = "periodic_perm"
    emits_pairs = True

    def __init__(self, n_period: int, perm=None):
        super().__init__()
        if n_period < 2:
            raise ValueError(f"period must be >= 2, got {n_period}")
        self.n_period = int(n_period)
        if perm is None:
            perm = range(1, n_period + 1)
        self.perm = _check_perm(self.n_period, perm)

    def next_pair(self) -> tuple[float, float]:
        self.position += 1
        w, w_tilde = periodic_perm(self.n_period, self.perm, self.position)
        self._check_range(w, low_open=True, high_open=False)
        self._check_range(w_tilde, low_open=False, high_open=True)
        return w, w_tilde

    def take(self, m: int) -> tuple[np.ndarray, np.ndarray]:
        pairs = [self.next_pair() for _ in range(m)]
        w = np.array([p[0] for p in pairs])
        w_tilde = np.array([p[1] for p in pairs])
        return w, w_tilde

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "period": self.n_period,
            "perm": list(self.perm),
            "position": self.position,
        }


def source_from_spec(kind: str, *, seed=None, lam=None, base=None,
                     period=None, perm=None):
    """Build a source from plain parameters (the CLI entry path)."""
    if kind == "uniform":
        if seed is None:
            raise ValueError("uniform source requires a seed")
        return UniformSource(seed)
    if kind == "weyl":
        return WeylSource(SQRT2 if lam is None else lam)
    if kind in ("vdc", "van_der_corput"):
        return VanDerCorputSource(2 if base is None else base)
    if kind in ("perm", "periodic_perm"):
        if period is None:
            raise ValueError("periodic permutation source requires a period")
        return PeriodicPermSource(period, perm)
    raise ValueError(f"unknown source kind {kind!r}")
