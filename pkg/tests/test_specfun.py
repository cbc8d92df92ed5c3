import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from edgegap.errors import DomainError
from edgegap.specfun import (
    AI0,
    AIP0,
    DEFAULT_CONFIG,
    SpecFunConfig,
    airy_ai,
    airy_ai_and_deriv,
    airy_ai_deriv,
    airy_branch,
    airy_tail,
    bessel_j,
    bessel_j_deriv,
    bessel_j_integral,
    bessel_j_orders,
    bessel_j_uniform,
    cumulative_integral,
    olver_zeta,
)

# frozen oracle values (mpmath, 40 digits)
J50_AT_45 = 0.01728434324079122445068219
DJ10_AT_12 = -0.02001578649157339173355641
AI_AT_5 = 0.000108344428136074417349865
INT_J2_TO_5 = 1.370470192967698246402943
INT_J0_TO_200 = 0.9457740005385858354050217
AIRY_TAIL_M5 = 1.051215537881160982492654


def series_oracle(n, x, terms=200):
    """Maclaurin series of J_n in 60-digit arithmetic."""
    with mpmath.workdps(60):
        x = mpmath.mpf(x)
        h = x / 2
        return float(mpmath.fsum((-1) ** k * h ** (2 * k + n) / (mpmath.factorial(k) * mpmath.factorial(n + k))
                                 for k in range(terms)))


class TestBesselJ:
    def test_origin(self):
        assert bessel_j(0, 0.0) == 1.0
        assert bessel_j(3, 0.0) == 0.0

    def test_order_50(self):
        assert abs(bessel_j(50, 45.0) - J50_AT_45) < 1e-13
        assert abs(bessel_j(50, 45.0) - series_oracle(50, 45.0)) < 1e-13

    def test_negative_argument(self):
        with pytest.raises(DomainError):
            bessel_j(1, -1.0)

    @pytest.mark.parametrize("order", [0, 1, 2, 7, 20, 63, 128, 200, 256])
    def test_against_mpmath(self, order):
        xs = np.concatenate([np.linspace(0.01, 30, 25), np.linspace(30, 512, 25), [order * 0.98, order, order * 1.02 + 1]])
        got = bessel_j(order, xs)
        ref = np.array([float(mpmath.besselj(order, x)) for x in xs])
        assert np.max(np.abs(got - ref)) < 1e-13

    @given(st.integers(1, 64), st.floats(0.5, 128))
    def test_three_term_recurrence(self, a, x):
        jm, j0, jp = bessel_j_orders([a - 1, a, a + 1], x)
        assert abs(jm + jp - 2 * a / x * j0) < 1e-11

    @given(st.floats(0.0, 128))
    def test_miller_normalization(self, x):
        top = int(x) + 60
        js = bessel_j_orders(list(range(0, top + 1, 2)), x)
        assert abs(js[0] + 2 * math.fsum(js[1:]) - 1) < 1e-11

    def test_negative_orders(self):
        assert bessel_j_orders([-3], 2.5)[0] == pytest.approx(-bessel_j(3, 2.5), rel=1e-15)

    def test_array_shape(self):
        assert bessel_j(2, np.ones((3, 4))).shape == (3, 4)


class TestBesselDeriv:
    @given(st.floats(0.1, 100))
    def test_order_zero(self, x):
        assert bessel_j_deriv(0, x) == pytest.approx(-bessel_j(1, x), abs=1e-15)

    def test_origin_limits(self):
        assert bessel_j_deriv(1, 0.0) == 0.5
        assert bessel_j_deriv(0, 0.0) == 0.0
        assert bessel_j_deriv(3, 0.0) == 0.0
        assert bessel_j_deriv(1, 1e-9) == pytest.approx(0.5, abs=1e-12)

    def test_finite_difference(self):
        h = 1e-5
        fd = (bessel_j(10, 12.0 + h) - bessel_j(10, 12.0 - h)) / (2 * h)
        assert abs(bessel_j_deriv(10, 12.0) - fd) < 1e-8
        assert abs(bessel_j_deriv(10, 12.0) - DJ10_AT_12) < 1e-14


class TestBesselIntegral:
    def test_zero(self):
        assert bessel_j_integral(3, 0.0) == 0.0

    def test_large_argument(self):
        assert abs(bessel_j_integral(0, 200.0) - INT_J0_TO_200) < 1e-11

    def test_dual_resolution(self):
        f = lambda t: bessel_j(0, t)  # noqa: E731
        coarse = cumulative_integral(f, np.array([200.0]), 0.0, panel=2.0, order=16)
        fine = cumulative_integral(f, np.array([200.0]), 0.0, panel=1.0, order=24)
        assert abs(coarse[0] - fine[0]) < 1e-11

    def test_derivative_recovers_integrand(self):
        h = 1e-4
        fd = (bessel_j_integral(2, 5.0 + h) - bessel_j_integral(2, 5.0 - h)) / (2 * h)
        assert abs(fd - bessel_j(2, 5.0)) < 1e-7
        assert abs(bessel_j_integral(2, 5.0) - INT_J2_TO_5) < 1e-13

    @pytest.mark.parametrize("order", [0, 1, 2, 5, 33, 129])
    def test_neumann_series(self, order):
        """int_0^z J_n = 2 sum_k J_{n+2k+1}(z), a route with no quadrature in it."""
        zs = np.array([0.3, 2.0, 7.0, 15.0, 40.0, 140.0, 300.0])
        got = bessel_j_integral(order, zs)
        for z, g in zip(zs, got):
            top = order + int(z) + 80
            terms = bessel_j_orders(list(range(order + 1, top, 2)), z)
            assert abs(g - 2 * math.fsum(terms)) < 1e-11


class TestAiry:
    def test_origin(self):
        assert airy_ai(0.0) == pytest.approx(3 ** (-2 / 3) / math.gamma(2 / 3), rel=1e-15)
        assert airy_ai_deriv(0.0) == pytest.approx(-(3 ** (-1 / 3)) / math.gamma(1 / 3), rel=1e-15)
        assert airy_ai(0.0) == AI0 and airy_ai_deriv(0.0) == AIP0

    def test_at_five(self):
        assert abs(airy_ai(5.0) - AI_AT_5) < 1e-13

    def test_against_mpmath(self):
        xs = np.linspace(-20, 20, 401)
        ai, aip = airy_ai_and_deriv(xs)
        ref = np.array([float(mpmath.airyai(x)) for x in xs])
        refp = np.array([float(mpmath.airyai(x, 1)) for x in xs])
        assert np.max(np.abs(ai - ref)) < 1e-13
        assert np.max(np.abs(aip - refp)) < 1e-13

    @pytest.mark.parametrize("x", [-DEFAULT_CONFIG.series_cutoff, DEFAULT_CONFIG.series_cutoff])
    def test_series_ray_crossover(self, x):
        xs = np.array([x])
        for s, r in zip(airy_branch("series", xs), airy_branch("ray", xs)):
            assert abs(s[0] - r[0]) < 1e-12

    @pytest.mark.parametrize("x", [-DEFAULT_CONFIG.asymptotic_cutoff, DEFAULT_CONFIG.asymptotic_cutoff])
    def test_ray_asymptotic_crossover(self, x):
        xs = np.array([x])
        for r, a in zip(airy_branch("ray", xs), airy_branch("asymptotic", xs)):
            assert abs(r[0] - a[0]) < 1e-12

    @given(st.floats(-15, 15))
    def test_ode_residual(self, x):
        h = 1e-5
        second = (airy_ai_deriv(x + h) - airy_ai_deriv(x - h)) / (2 * h)
        assert abs(second - x * airy_ai(x)) < 1e-8

    def test_unknown_branch(self):
        with pytest.raises(ValueError):
            airy_branch("nope", 1.0)


class TestAiryTail:
    def test_zero(self):
        assert airy_tail(0.0) == pytest.approx(1 / 3, abs=1e-13)

    def test_far_right(self):
        assert 0 <= airy_tail(20.0) < 1e-13

    def test_minus_five(self):
        assert abs(airy_tail(-5.0) - AIRY_TAIL_M5) < 1e-11

    def test_dual_resolution(self):
        f = lambda t: airy_ai(t)  # noqa: E731
        a = cumulative_integral(f, np.array([-5.0]), 0.0, panel=1.0, order=16)
        b = cumulative_integral(f, np.array([-5.0]), 0.0, panel=0.5, order=24)
        assert abs(a[0] - b[0]) < 1e-11

    def test_against_mpmath(self):
        ys = np.array([-12.0, -6.3, -1.0, 0.4, 2.5, 7.0, 15.9, 16.1, 19.0])
        got = airy_tail(ys)
        for y, g in zip(ys, got):
            assert abs(g - float(mpmath.quad(mpmath.airyai, [y, mpmath.inf]))) < 1e-11

    @given(st.floats(-12, 15))
    def test_derivative_is_minus_ai(self, y):
        h = 1e-4
        fd = (airy_tail(y + h) - airy_tail(y - h)) / (2 * h)
        assert abs(fd + airy_ai(y)) < 1e-7


class TestOlver:
    def test_zeta_at_one(self):
        assert olver_zeta(1.0) == 0.0

    @pytest.mark.parametrize("z", [0.05, 0.3, 0.8, 0.99, 0.998, 0.9995, 0.9991, 1.0009, 1.0005, 1.002, 1.2, 3.0])
    def test_zeta_defining_relation(self, z):
        zeta = mpmath.mpf(olver_zeta(z))
        if z < 1:
            r = mpmath.sqrt(1 - mpmath.mpf(z) ** 2)
            rhs = mpmath.log((1 + r) / z) - r
            assert float(2 / mpmath.mpf(3) * zeta**1.5) == pytest.approx(float(rhs), rel=1e-12)
        else:
            r = mpmath.sqrt(mpmath.mpf(z) ** 2 - 1)
            rhs = r - mpmath.asec(z)
            assert float(2 / mpmath.mpf(3) * (-zeta) ** 1.5) == pytest.approx(float(rhs), rel=1e-12)

    def test_zeta_continuous_at_series_switch(self):
        eps = 1e-12
        for z0 in (1 - 1e-3, 1 + 1e-3):
            jump = abs(olver_zeta(z0 * (1 + eps)) - olver_zeta(z0 * (1 - eps)))
            # |zeta'| is about 2^(1/3) near z = 1
            assert jump < 2 * 2 ** (1 / 3) * 2 * eps

    @given(st.floats(0.01, 0.99), st.floats(0.01, 0.99))
    def test_zeta_decreasing(self, a, b):
        if a < b:
            assert olver_zeta(a) > olver_zeta(b)

    def test_turning_point(self):
        nu = 200
        assert bessel_j_uniform(nu, 0.0) == pytest.approx((2 / nu) ** (1 / 3) * AI0, rel=1e-3)
        assert bessel_j(nu, float(nu)) == pytest.approx(bessel_j_uniform(nu, 0.0), rel=1e-3)

    @pytest.mark.parametrize("w", [-2.0, 0.0, 2.0])
    def test_relative_deviation_shrinks(self, w):
        def rel(nu):
            exact = bessel_j(nu, nu - w * (nu / 2) ** (1 / 3))
            return abs(bessel_j_uniform(nu, w) - exact) / abs(exact)

        assert rel(128) < rel(64) < 2 * 64 ** (-2 / 3)

    def test_remainder_bound(self):
        C = 1e-3
        worst = []
        for nu in (32, 64, 128, 256):
            ratio = 0.0
            for w in np.linspace(-2, 6, 33):
                x = nu - w * (nu / 2) ** (1 / 3)
                diff = abs(bessel_j_uniform(nu, w) - bessel_j(nu, x))
                ratio = max(ratio, diff * nu ** (2 / 3) * math.exp(w))
            worst.append(ratio)
        assert max(worst) < C
        assert all(b < a for a, b in zip(worst, worst[1:]))

    def test_domain(self):
        with pytest.raises(DomainError):
            bessel_j_uniform(4, 0.0)
        with pytest.raises(DomainError):
            bessel_j_uniform(8, 100.0)


class TestConfig:
    def test_validation(self):
        with pytest.raises(DomainError):
            SpecFunConfig(series_cutoff=-1.0)
        with pytest.raises(DomainError):
            SpecFunConfig(series_cutoff=5.0, asymptotic_cutoff=4.0)

    def test_alternative_cutoffs_agree(self):
        cfg = SpecFunConfig(series_cutoff=3.0, asymptotic_cutoff=9.0)
        xs = np.linspace(-12, 12, 97)
        assert np.max(np.abs(airy_ai(xs, cfg) - airy_ai(xs))) < 1e-13
