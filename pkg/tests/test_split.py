"""Tests for the coprime split design and the split-sample interval."""

import math
from fractions import Fraction

import pytest

from binomci.numerics import binom_pmf
from binomci.splitsample import (
    SplitDesign,
    split_design,
    split_sample_cdf,
    split_sample_interval,
    t_numerator,
    thetahat_support,
)

ALPHA = 0.05


def brute_force_cdf(design, theta, t_num):
    """Oracle: plain double sum over every (y1, y2) pair."""
    total = 0.0
    for y1 in range(design.n1 + 1):
        for y2 in range(design.n2 + 1):
            if y1 * design.n2 + y2 * design.n1 <= t_num:
                total += binom_pmf(design.n1, theta, y1) * binom_pmf(
                    design.n2, theta, y2
                )
    return total


def best_split_by_search(n):
    """Oracle: exhaustive scan for the closest coprime split."""
    best = None
    for k in range(1, n):
        if math.gcd(k, n - k) == 1:
            pair = (min(k, n - k), max(k, n - k))
            if best is None or abs(pair[0] - pair[1]) < abs(best[0] - best[1]):
                best = pair
    return best


class TestSplitDesign:
    def test_named_cases(self):
        assert split_design(47) == SplitDesign(23, 24)
        assert split_design(5) == SplitDesign(2, 3)
        assert split_design(10) == SplitDesign(3, 7)

    @pytest.mark.parametrize("n", range(3, 40))
    def test_matches_exhaustive_search(self, n):
        d = split_design(n)
        assert (d.n1, d.n2) == best_split_by_search(n)
        assert d.n1 + d.n2 == n
        assert math.gcd(d.n1, d.n2) == 1
        assert d.n1 <= d.n2

    def test_too_small(self):
        with pytest.raises(ValueError):
            split_design(2)

    def test_design_validation(self):
        with pytest.raises(ValueError):
            SplitDesign(4, 6)
        with pytest.raises(ValueError):
            SplitDesign(7, 3)


class TestSplitCdf:
    def test_full_support(self):
        d = split_design(10)
        for theta in (0.1, 0.5, 0.9):
            assert split_sample_cdf(d, theta, d.t_max) == pytest.approx(1.0)

    def test_theta_zero_mass_at_origin(self):
        d = split_design(10)
        assert split_sample_cdf(d, 0.0, 0) == 1.0
        assert split_sample_cdf(d, 0.0, 17) == 1.0

    def test_matches_brute_force(self):
        d = split_design(10)
        t = t_numerator(d, 1, 2)
        assert split_sample_cdf(d, 0.4, t) == pytest.approx(
            brute_force_cdf(d, 0.4, t), abs=1e-13
        )

    @pytest.mark.parametrize("t_num", [0, 5, 13, 21, 42])
    def test_brute_force_grid(self, t_num):
        d = split_design(10)
        for theta in (0.15, 0.5, 0.83):
            assert split_sample_cdf(d, theta, t_num) == pytest.approx(
                brute_force_cdf(d, theta, t_num), abs=1e-13
            )

    def test_decreasing_in_theta(self):
        d = split_design(10)
        t = t_numerator(d, 1, 3)
        values = [split_sample_cdf(d, th, t) for th in (0.2, 0.4, 0.6, 0.8)]
        assert all(a > b for a, b in zip(values, values[1:]))


class TestSplitInterval:
    def test_boundary_outcomes(self):
        d = split_design(10)
        assert split_sample_interval(0, 0, d, ALPHA).lower == 0.0
        assert split_sample_interval(d.n1, d.n2, d, ALPHA).upper == 1.0

    def test_half_tie_outcomes_identical(self):
        # (0, n2) and (n1, 0) share the estimator value 1/2, hence the interval
        d = split_design(47)
        a = split_sample_interval(0, d.n2, d, ALPHA)
        b = split_sample_interval(d.n1, 0, d, ALPHA)
        assert t_numerator(d, 0, d.n2) == t_numerator(d, d.n1, 0)
        assert a.as_tuple() == b.as_tuple()

    def test_ordered_endpoints_inside_unit(self):
        d = split_design(10)
        for y1 in range(d.n1 + 1):
            for y2 in range(d.n2 + 1):
                iv = split_sample_interval(y1, y2, d, ALPHA)
                assert 0.0 <= iv.lower <= iv.upper <= 1.0

    def test_count_domain(self):
        d = split_design(10)
        with pytest.raises(ValueError):
            split_sample_interval(d.n1 + 1, 0, d, ALPHA)
        with pytest.raises(ValueError):
            split_sample_interval(0, -1, d, ALPHA)

    def test_monotone_in_t_numerator(self):
        # a strictly larger statistic value never shortens either endpoint
        d = split_design(10)
        outcomes = sorted(
            ((t_numerator(d, y1, y2), y1, y2)
             for y1 in range(d.n1 + 1) for y2 in range(d.n2 + 1)),
        )
        prev_t = prev_lo = prev_up = None
        for t, y1, y2 in outcomes:
            iv = split_sample_interval(y1, y2, d, ALPHA)
            if prev_t is not None and t > prev_t:
                assert iv.lower >= prev_lo - 1e-11
                assert iv.upper >= prev_up - 1e-11
            prev_t, prev_lo, prev_up = t, iv.lower, iv.upper


class TestSupport:
    def test_count_for_47(self):
        assert len(thetahat_support(split_design(47))) == 599

    def test_small_design_by_enumeration(self):
        d = split_design(3)  # groups (1, 2)
        values = thetahat_support(d)
        expected = {
            Fraction(t_numerator(d, y1, y2), d.t_max)
            for y1 in range(2)
            for y2 in range(3)
        }
        assert values == expected
        # six pairs but five values: (0, n2) and (n1, 0) collide at 1/2
        assert len(values) == 5

    def test_contains_exact_boundary_values(self):
        d = split_design(10)
        values = thetahat_support(d)
        assert Fraction(0) in values
        assert Fraction(1) in values
        assert Fraction(1, 2) in values

    def test_unique_collision_is_the_half_tie(self):
        d = split_design(47)
        pairs = (d.n1 + 1) * (d.n2 + 1)
        assert pairs - len(thetahat_support(d)) == 1
