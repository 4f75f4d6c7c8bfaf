import math
import random

import pytest

from arealmm.core import SeriesBudgetError, SeriesControl
from arealmm.polylog import (
    lemma_length1,
    multiple_polylog_1s,
    nakamura_reduce,
)
from arealmm.zeta import zeta_int

CTL = SeriesControl(tol=1e-10)


def brute_double_sum(s, u, v, cutoff):
    """Direct double series for Li_{1,s}(u, v); the independent oracle."""
    inner = 0j
    total = 0j
    for b in range(2, cutoff):
        inner += u ** (b - 1) / (b - 1)
        total += v ** b / b ** s * inner
    return total


def brute_weighted_sum(alpha, beta, h, cutoff):
    """Direct double series for the weighted inner-sum identity."""
    inner = 0j
    total = 0j
    for b in range(2, cutoff):
        a = b - 1
        inner += a * alpha ** a
        total += beta ** b / b ** (h + 1) * inner
    return total


class TestMultiplePolylog:
    def test_harmonic_case_exact(self):
        # sum_{b>1} H_{b-1}/b^3 telescopes to pi^4/360
        val = multiple_polylog_1s(3, 1, 1, CTL)
        assert abs(val - math.pi ** 4 / 360) < 5e-10
        assert abs(val.imag) < 1e-12

    @pytest.mark.parametrize("u,v", [(1j, 1), (-1j, 1), (1j, -1), (-1j, -1)])
    def test_double_sum_oracle(self, u, v):
        assert abs(multiple_polylog_1s(3, u, v, CTL) - brute_double_sum(3, u, v, 120000)) < 2e-8
        assert abs(multiple_polylog_1s(5, u, v, CTL) - brute_double_sum(5, u, v, 50000)) < 1e-8

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            multiple_polylog_1s(1, 1j, 1)
        with pytest.raises(ValueError):
            multiple_polylog_1s(3, 0.5, 1)
        with pytest.raises(ValueError):
            multiple_polylog_1s(3, 1j, 0.5 + 0.5j)

    def test_budget_exhaustion(self):
        with pytest.raises(SeriesBudgetError):
            multiple_polylog_1s(2, 1j, 1, SeriesControl(tol=1e-12, max_terms=10000))


class TestNakamuraReduce:
    @pytest.mark.parametrize("s", [3, 5])
    @pytest.mark.parametrize("u,v", [(1j, 1), (-1j, 1), (1j, -1), (-1j, -1)])
    def test_matches_projected_double_series(self, s, u, v):
        """Reduction to length-1 polylogs vs 2 Re_k of the direct series."""
        reduced = nakamura_reduce(1, s, u, v, CTL)
        direct = multiple_polylog_1s(s, u, v, CTL)
        k = 1 + s
        projected = 2j * direct.imag if k % 2 == 0 else complex(2 * direct.real)
        assert abs(reduced - projected) < 1e-8

    def test_small_case_with_u_equal_one(self):
        # k even and v real: the divergent factors cancel pairwise, and
        # both routes give 2 i Im of a real sum, i.e. zero
        reduced = nakamura_reduce(1, 1, 1, -1, CTL)
        assert abs(reduced) < 1e-12
        direct = brute_double_sum(1, 1.0, -1.0, 400000)
        assert abs(2j * direct.imag - reduced) < 1e-12

    def test_odd_weight_case(self):
        # r=2, s=1, k=3 odd: Re_k is the plain real part
        u, v = 1j, -1
        reduced = nakamura_reduce(2, 1, u, v, CTL)
        inner = 0j
        total = 0j
        for b in range(2, 200000):
            inner += u ** (b - 1) / (b - 1) ** 2
            total += v ** b / b * inner
        assert abs(reduced - 2 * total.real) < 1e-8
        assert abs(reduced.imag) < 1e-12

    def test_preconditions(self):
        with pytest.raises(ValueError):
            nakamura_reduce(1, 1, 1j, 1)  # v = 1 with s = 1
        with pytest.raises(ValueError):
            nakamura_reduce(0, 3, 1j, 1)
        with pytest.raises(ValueError):
            nakamura_reduce(1, 3, 0.5, 1)  # off the circle

    def test_divergent_u_equal_one_raises(self):
        # k odd with u = 1: the Li_1(1) cofactor does not cancel
        with pytest.raises(ValueError, match="nonvanishing cofactor"):
            nakamura_reduce(1, 2, 1, -1, CTL)


class TestLemmaClosedForm:
    def test_minus_one_beta_one(self):
        got = lemma_length1(-1, 1, 2, CTL)
        # closed combination of Li_2, Li_3 at -+1, reduced by hand
        hand = math.pi ** 2 / 24 - 7.0 / 16.0 * zeta_int(3)
        assert abs(got - hand) < 1e-11
        brute = brute_weighted_sum(-1.0, 1.0, 2, 2_000_000)
        assert abs(got - brute) < 2e-6  # oracle truncation dominates

    def test_i_minus_one(self):
        got = lemma_length1(1j, -1, 3, CTL)
        brute = brute_weighted_sum(1j, -1.0, 3, 200000)
        assert abs(got - brute) < 1e-9

    def test_beta_zero_empty_series(self):
        assert lemma_length1(0.3 + 0.2j, 0, 4, CTL) == 0

    def test_alpha_one_rejected(self):
        with pytest.raises(ValueError):
            lemma_length1(1, 0.5, 2)

    def test_random_points_on_disk(self):
        """10 random (alpha, beta) with |alpha - 1| > 0.1, combined tolerance."""
        rng = random.Random(2024)
        checked = 0
        while checked < 10:
            alpha = math.sqrt(rng.random()) * complex(
                math.cos(2 * math.pi * rng.random()),
                math.sin(2 * math.pi * rng.random()),
            )
            beta = math.sqrt(rng.random()) * complex(
                math.cos(2 * math.pi * rng.random()),
                math.sin(2 * math.pi * rng.random()),
            )
            if abs(alpha - 1) <= 0.1:
                continue
            h = rng.choice([3, 4, 5])
            cutoff = 100000
            brute = brute_weighted_sum(alpha, beta, h, cutoff)
            # |inner sum| <= (2b)/|1-alpha|^2, so the tail after `cutoff`
            # is below 2/|1-alpha|^2 * cutoff^(1-h)/(h-1)
            tail = 2.0 / abs(alpha - 1) ** 2 * cutoff ** (1 - h) / (h - 1)
            got = lemma_length1(alpha, beta, h, CTL)
            assert abs(got - brute) <= tail + 1e-9, (alpha, beta, h)
            checked += 1
