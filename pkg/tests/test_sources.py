"""Tests for the auxiliary-value sources."""

import math
from collections import Counter

import numpy as np
import pytest

from binomci.sources import (
    SQRT2,
    PeriodicPermSource,
    UniformSource,
    VanDerCorputSource,
    WeylSource,
    periodic_perm,
    source_from_spec,
    van_der_corput,
    weyl,
)


def ks_distance(values):
    """Kolmogorov distance to the uniform cdf on [0, 1], independent oracle."""
    xs = np.sort(np.asarray(values))
    m = len(xs)
    below = np.arange(1, m + 1) / m - xs
    above = xs - np.arange(0, m) / m
    return max(below.max(), above.max())


class TestUniform:
    def test_replay_is_identical(self):
        a = UniformSource(12345)
        b = UniformSource(12345)
        assert [a.next_value() for _ in range(3)] == [
            b.next_value() for _ in range(3)
        ]

    def test_open_interval(self):
        src = UniformSource(0)
        for _ in range(1000):
            x = src.next_value()
            assert 0.0 < x < 1.0

    def test_mean_law_of_large_numbers(self):
        values = UniformSource(2024).take(100_000)
        assert abs(values.mean() - 0.5) < 0.01

    def test_kolmogorov_distance(self):
        values = UniformSource(99).take(100_000)
        assert ks_distance(values) < 0.01

    def test_describe_tracks_position(self):
        src = UniformSource(5)
        src.take(4)
        assert src.describe() == {"kind": "uniform", "seed": 5, "position": 4}


class TestWeyl:
    def test_first_values_of_sqrt2(self):
        assert weyl(SQRT2, 1) == pytest.approx(0.41421356, abs=1e-8)
        assert weyl(SQRT2, 2) == pytest.approx(0.82842712, abs=1e-8)
        assert weyl(SQRT2, 3) == pytest.approx(0.24264068, abs=1e-8)

    def test_range(self):
        src = WeylSource()
        for _ in range(5000):
            assert 0.0 <= src.next_value() < 1.0

    def test_equidistribution(self):
        values = WeylSource().take(100_000)
        for t in np.arange(0.1, 0.95, 0.1):
            assert abs((values <= t).mean() - t) < 0.01

    def test_k_validation(self):
        with pytest.raises(ValueError):
            weyl(SQRT2, 0)


class TestVanDerCorput:
    def test_bit_reversal_base2(self):
        assert van_der_corput(1, 2) == 0.5
        assert van_der_corput(2, 2) == 0.25
        assert van_der_corput(3, 2) == 0.75

    def test_base3_start(self):
        assert van_der_corput(1, 3) == pytest.approx(1 / 3)
        assert van_der_corput(2, 3) == pytest.approx(2 / 3)
        assert van_der_corput(3, 3) == pytest.approx(1 / 9)

    def test_equidistribution(self):
        values = VanDerCorputSource(2).take(100_000)
        for t in np.arange(0.1, 0.95, 0.1):
            assert abs((values <= t).mean() - t) < 0.01

    def test_validation(self):
        with pytest.raises(ValueError):
            van_der_corput(0, 2)
        with pytest.raises(ValueError):
            van_der_corput(1, 1)


class TestPeriodicPerm:
    def test_identity_pattern(self):
        values = [periodic_perm(4, (1, 2, 3, 4), k)[0] for k in range(1, 5)]
        assert values == [0.25, 0.5, 0.75, 1.0]

    def test_periodicity(self):
        assert periodic_perm(4, (1, 2, 3, 4), 5) == periodic_perm(
            4, (1, 2, 3, 4), 1
        )

    def test_any_perm_gives_same_multiset(self):
        values = [periodic_perm(4, (3, 1, 4, 2), k)[0] for k in range(1, 5)]
        assert Counter(values) == Counter([0.25, 0.5, 0.75, 1.0])

    def test_companion_is_exact_shift(self):
        for k in range(1, 9):
            w, w_tilde = periodic_perm(8, tuple(range(1, 9)), k)
            assert w_tilde == w - 1.0 / 8

    def test_window_multiset_over_any_offset(self):
        src = PeriodicPermSource(5, (2, 5, 1, 3, 4))
        src.next_pair()  # misalign the window
        window = [src.next_pair()[0] for _ in range(5)]
        assert Counter(window) == Counter([0.2, 0.4, 0.6, 0.8, 1.0])

    def test_ranges(self):
        src = PeriodicPermSource(3)
        for _ in range(9):
            w, w_tilde = src.next_pair()
            assert 0.0 < w <= 1.0
            assert 0.0 <= w_tilde < 1.0

    def test_perm_validation(self):
        with pytest.raises(ValueError):
            periodic_perm(4, (1, 2, 2, 4), 1)
        with pytest.raises(ValueError):
            PeriodicPermSource(4, (1, 2, 3))


class TestSourceFromSpec:
    def test_each_kind(self):
        assert source_from_spec("uniform", seed=3).kind == "uniform"
        assert source_from_spec("weyl").lam == SQRT2
        assert source_from_spec("vdc").base == 2
        perm_src = source_from_spec("perm", period=4)
        assert perm_src.perm == (1, 2, 3, 4)

    def test_uniform_requires_seed(self):
        with pytest.raises(ValueError):
            source_from_spec("uniform")

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            source_from_spec("dice")
