import cmath
import math

import pytest
from scipy.integrate import quad

from arealmm.core import SeriesBudgetError, SeriesControl
from arealmm.hyper import gamma_real, hyper_pfq, hyper_pfq_raw

F1_PARAMS = ([0.25, 0.25, 0.75, 0.75], [0.5, 1.25, 1.25])
F2_PARAMS = ([0.75, 0.75, 1.25, 1.25], [1.5, 1.75, 1.75])


class TestGamma:
    def test_half(self):
        assert abs(gamma_real(0.5) - math.sqrt(math.pi)) < 1e-15

    def test_factorial(self):
        assert gamma_real(5) == 24.0

    def test_duplication_formula(self):
        for x in (0.3, 0.77, 1.9, 3.25):
            lhs = gamma_real(x) * gamma_real(x + 0.5)
            rhs = 2.0 ** (1 - 2 * x) * math.sqrt(math.pi) * gamma_real(2 * x)
            assert abs(lhs - rhs) < 1e-13 * abs(rhs)

    def test_domain(self):
        with pytest.raises(ValueError):
            gamma_real(0.0)
        with pytest.raises(ValueError):
            gamma_real(-1.5)


class TestSeriesRegion:
    def test_log_identity(self):
        # 2F1(1,1;2;z) = -log(1-z)/z
        z = 0.5
        assert abs(hyper_pfq([1, 1], [2], z) - (-math.log(1 - z) / z)) < 1e-12

    def test_terminating_polynomial(self):
        # 2F1(-1,-1;1;z) = 1 + z, exactly
        assert hyper_pfq([-1, -1], [1], 0.25) == 1.25

    def test_radial_factor_theta_quadrature(self):
        # circle average of |rho e^{i t} + 1|^s, s = 2, rho = 1/2: only the
        # constant Fourier terms survive, giving 1 + rho^2 = 5/4
        s, rho = 2.0, 0.5
        direct, _ = quad(
            lambda th: abs(rho * cmath.exp(1j * th) + 1.0) ** s,
            -math.pi, math.pi, epsabs=1e-13, epsrel=0.0,
        )
        assert abs(direct / (2 * math.pi) - 1.25) < 1e-12
        assert abs(hyper_pfq([-1.0, -1.0], [1.0], 0.25) - 1.25) < 1e-14

    def test_budget_error(self):
        with pytest.raises(SeriesBudgetError):
            hyper_pfq([0.5, 0.5], [1.5], 0.999, SeriesControl(tol=1e-12, max_terms=50))


class TestUnitArgument:
    @pytest.mark.parametrize("params", [F1_PARAMS, F2_PARAMS])
    def test_raw_summation_oracle(self, params):
        """Accelerated value vs the plain 1e6-term partial sum.

        The raw tail decays like 1/N, so agreement is asserted at the
        truncation scale, and doubling the budget must move the raw sum
        toward the accelerated value.
        """
        a, b = params
        accel = hyper_pfq(a, b, 1.0)
        raw_small = hyper_pfq_raw(a, b, 1.0, 300_000)
        raw_big = hyper_pfq_raw(a, b, 1.0, 1_000_000)
        assert abs(accel - raw_big) < 3e-6
        assert abs(accel - raw_big) < abs(accel - raw_small)

    def test_acceleration_is_tight(self):
        # the two acceleration routes agree far below the raw truncation
        ctl_loose = SeriesControl(tol=1e-9)
        ctl_tight = SeriesControl(tol=5e-13)
        a, b = F1_PARAMS
        assert abs(hyper_pfq(a, b, 1.0, ctl_loose) - hyper_pfq(a, b, 1.0, ctl_tight)) < 1e-9

    def test_divergent_at_one(self):
        with pytest.raises(ValueError, match="diverges"):
            hyper_pfq([1, 1], [1], 1.0)

    def test_lower_parameter_pole(self):
        with pytest.raises(ValueError, match="nonpositive integer"):
            hyper_pfq([1, 1], [-2], 0.5)

    def test_domain(self):
        with pytest.raises(ValueError):
            hyper_pfq([1], [2], 1.5)
