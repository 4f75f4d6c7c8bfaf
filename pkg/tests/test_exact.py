import math
from fractions import Fraction

import pytest

from arealmm.exact import (
    bernoulli,
    euler_number,
    secant_number,
    tangent_number,
    xj_logk_integral,
    zigzag_number,
)


class TestBernoulli:
    def test_examples(self):
        assert bernoulli(0) == 1
        assert bernoulli(1) == Fraction(-1, 2)
        assert bernoulli(2) == Fraction(1, 6)  # recurrence by hand
        assert bernoulli(3) == 0

    def test_odd_vanish(self):
        assert all(bernoulli(n) == 0 for n in range(3, 41, 2))

    def test_sign_alternation(self):
        # B_2, B_4, B_6, ... alternate +, -, +, -
        for k in range(1, 16):
            expected = 1 if k % 2 == 1 else -1
            assert (1 if bernoulli(2 * k) > 0 else -1) == expected

    def test_tangent_number_cross_recurrence(self):
        # T_{2m-1} = (-1)^(m-1) 2^(2m) (2^(2m) - 1) B_{2m} / (2m)
        for m in range(1, 16):  # covers indices up to 30
            lhs = Fraction(tangent_number(2 * m - 1))
            rhs = (
                (-1) ** (m - 1)
                * Fraction(2 ** (2 * m) * (2 ** (2 * m) - 1))
                * bernoulli(2 * m)
                / (2 * m)
            )
            assert lhs == rhs, m

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            bernoulli(-1)


class TestEuler:
    def test_examples(self):
        assert euler_number(0) == 1
        assert euler_number(1) == 0
        assert euler_number(2) == -1  # recurrence by hand

    def test_odd_vanish(self):
        assert all(euler_number(n) == 0 for n in range(1, 41, 2))

    def test_sign_alternation(self):
        for k in range(0, 16):
            expected = 1 if k % 2 == 0 else -1
            assert (1 if euler_number(2 * k) > 0 else -1) == expected

    def test_integer_valued(self):
        assert all(euler_number(n).denominator == 1 for n in range(34))

    def test_secant_number_cross_recurrence(self):
        # |E_{2m}| equals the even zigzag numbers
        for m in range(0, 16):  # up to index 30
            assert abs(euler_number(2 * m)) == secant_number(2 * m)


def test_zigzag_small_values():
    assert [zigzag_number(i) for i in range(10)] == [
        1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936,
    ]


class TestChuVandermonde:
    def test_identity_exact(self):
        """Binomial-sum identity, exact in integer arithmetic for a,b <= 25."""
        for a in range(1, 26):
            for b in range(1, 26):
                lhs = sum(math.comb(a + b - r, b) * 2 ** r for r in range(a + 1))
                lhs += sum(math.comb(a + b - r, a) * 2 ** r for r in range(b + 1))
                assert lhs == 2 ** (a + b + 1), (a, b)


class TestLogMomentIntegral:
    def test_examples(self):
        assert xj_logk_integral(1, 1) == Fraction(-1, 4)  # one integration by parts
        assert xj_logk_integral(7, 0) == Fraction(1, 8)
        assert xj_logk_integral(1, 2) == Fraction(1, 4)

    def test_reduced_positive_denominator(self):
        for j in range(5):
            for k in range(5):
                v = xj_logk_integral(j, k)
                assert v.denominator >= 1
                assert math.gcd(v.numerator, v.denominator) == 1

    def test_brute_force_quadrature(self):
        from scipy.integrate import quad

        for j in range(4):
            for k in range(4):
                num, _ = quad(
                    lambda x: x ** j * math.log(x) ** k, 0, 1,
                    epsabs=1e-13, epsrel=0.0, limit=200,
                )
                assert abs(num - float(xj_logk_integral(j, k))) < 1e-10
