"""Tests for the controlled-precision real evaluators.

mpmath's own gamma / zeta / besselj / besseljzero routines serve as
independent oracles (the package never calls them); exact rational values
from the generators anchor the even-integer identities.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpf

from logbehave import (
    DomainError,
    PrecisionContext,
    PrecisionError,
    bell,
    bell_real,
    bell_root,
    bessel_j,
    bessel_zero,
    bessel_zeta_real,
    gamma_lower_bound_holds,
    ln_gamma,
    log_second_difference,
    rayleigh_sigma,
    riemann_zeta_real,
    theta,
    theta_mu,
    zero_table,
    zeta_even_rational,
)
from logbehave.realfn import _mcmahon

CTX = PrecisionContext(working_precision=256, tolerance=1e-30)
CTX_FAST = PrecisionContext(working_precision=192, tolerance=1e-15)


def to_mpf(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


def rel_err(got, want) -> float:
    return float(abs(got - want) / abs(want))


class TestPrecisionContext:
    def test_defaults_valid(self):
        ctx = PrecisionContext()
        assert ctx.working_precision == 256

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"working_precision": 32},
            {"tolerance": 0.0},
            {"tolerance": -1e-3},
            {"max_terms": 0},
            {"working_precision": 64, "tolerance": 1e-30},  # not achievable at 64 bits
        ],
    )
    def test_invalid_rejected(self, kwargs):
        with pytest.raises(DomainError):
            PrecisionContext(**kwargs)


class TestLnGamma:
    def test_integer_anchors(self):
        with mp.workprec(300):
            assert rel_err(ln_gamma(3, CTX), mp.log(2)) < 1e-30
            assert abs(ln_gamma(1, CTX)) < mpf(10) ** -30
            assert rel_err(ln_gamma(11, CTX), mp.log(3628800)) < 1e-30

    @pytest.mark.parametrize("x", [0.25, 0.5, 1.5, 2.0, 7.3, 25.0, 170.0, 1234.5])
    def test_against_mpmath(self, x):
        with mp.workprec(360):
            want = mp.loggamma(mpf(x))
            got = ln_gamma(x, CTX)
            assert abs(got - want) <= 10 * mpf(CTX.tolerance) * max(1, abs(want))

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            ln_gamma(0, CTX)
        with pytest.raises(DomainError):
            ln_gamma(-2.5, CTX)


class TestGammaLowerBound:
    @pytest.mark.parametrize("x", [0.5, 1, 2, 5, 10, 50, 170])
    def test_holds_on_required_points(self, x):
        assert gamma_lower_bound_holds(x, CTX)

    def test_holds_on_dense_sample(self):
        for i in range(1, 60):
            assert gamma_lower_bound_holds(i / 4, CTX_FAST)

    def test_margin_matches_stirling_correction(self):
        # log Gamma(x) - log bound approaches 1/(12x) from below
        with mp.workprec(300):
            x = mpf(80)
            margin = ln_gamma(x, CTX) - (
                (mp.log(2 * mp.pi) - mp.log(x)) / 2 + x * (mp.log(x) - 1)
            )
            assert 1 / (12 * x) - 1 / (300 * x**3) < margin < 1 / (12 * x)


class TestRiemannZeta:
    def test_zeta_two(self):
        with mp.workprec(300):
            assert rel_err(riemann_zeta_real(2, CTX), mp.pi**2 / 6) < 1e-30

    def test_even_arguments_match_exact_route(self):
        with mp.workprec(320):
            for n in range(1, 11):
                got = riemann_zeta_real(2 * n, CTX)
                want = to_mpf(zeta_even_rational(n)) * mp.pi ** (2 * n)
                assert abs(got - want) <= 10 * mpf(CTX.tolerance) * want

    def test_large_argument_tail(self):
        value = riemann_zeta_real(50, CTX)
        assert value - 1 < mpf(2) ** -49 * mpf("1.01")
        assert value > 1

    @pytest.mark.parametrize("x", [1.1, 1.5, 2.5, 3.0, 7.7, 19.0, 33.5])
    def test_against_mpmath(self, x):
        with mp.workprec(360):
            want = mp.zeta(mpf(x))
            assert rel_err(riemann_zeta_real(x, CTX), want) < 1e-30

    def test_domain(self):
        for bad in (1.0, 0.5, -3.0):
            with pytest.raises(DomainError):
                riemann_zeta_real(bad, CTX)

    def test_tolerance_self_consistency(self):
        loose = PrecisionContext(256, 1e-12)
        tight = PrecisionContext(256, 1e-13)
        for x in (1.5, 2.0, 6.0):
            a = riemann_zeta_real(x, loose)
            b = riemann_zeta_real(x, tight)
            assert abs(a - b) <= 1e-12 * abs(b)


class TestTheta:
    def test_closed_form_at_two(self):
        with mp.workprec(300):
            want = mp.sqrt(2 * mp.pi**2 / 3)
            assert rel_err(theta(2, CTX), want) < 1e-29

    def test_bernoulli_identity_at_two(self):
        # theta(2)^2 / (4 pi^2) equals |B_2| = 1/6
        with mp.workprec(300):
            value = theta(2, CTX) ** 2 / (4 * mp.pi**2)
            assert rel_err(value, mpf(1) / 6) < 1e-28

    def test_increasing_sample(self):
        assert theta(6, CTX_FAST) < theta(6.5, CTX_FAST)

    def test_domain(self):
        with pytest.raises(DomainError):
            theta(1, CTX)


class TestBesselJ:
    def test_at_zero(self):
        assert bessel_j(0, 0, CTX) == 1
        assert bessel_j(1, 0, CTX) == 0

    def test_vanishes_at_first_zero(self):
        assert abs(bessel_j(0, 2.404825557695773, CTX_FAST)) < 1e-12

    @pytest.mark.parametrize("mu", [-0.5, 0, 0.5, 1, 2.3])
    @pytest.mark.parametrize("x", [0.5, 1.0, 5.0, 20.0])
    def test_against_mpmath(self, mu, x):
        with mp.workprec(360):
            want = mpmath.besselj(mpf(mu), mpf(x))
            assert abs(bessel_j(mu, x, CTX) - want) < mpf(10) ** -29

    def test_domain(self):
        with pytest.raises(DomainError):
            bessel_j(-1.5, 1.0, CTX)
        with pytest.raises(DomainError):
            bessel_j(0, -1.0, CTX)


class TestBesselZero:
    def test_first_zero_of_j0(self):
        got = bessel_zero(0, 1, CTX)
        assert abs(got - mpf("2.404825557695773")) < 1e-10

    def test_bisection_oracle_agreement(self):
        # independent pure-bisection root location on the series
        lo, hi = mpf(2), mpf(3)
        f_lo = bessel_j(0, lo, CTX_FAST)
        for _ in range(60):
            mid = (lo + hi) / 2
            f_mid = bessel_j(0, mid, CTX_FAST)
            if mp.sign(f_mid) == mp.sign(f_lo):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        assert abs(bessel_zero(0, 1, CTX) - (lo + hi) / 2) < 1e-14

    def test_mcmahon_spacing(self):
        spacing = bessel_zero(0, 2, CTX_FAST) - bessel_zero(0, 1, CTX_FAST)
        assert abs(spacing - mp.pi) < 0.3

    @pytest.mark.parametrize("mu", [0, 0.5, 1, 2, 5])
    def test_against_mpmath(self, mu):
        with mp.workprec(360):
            for k in (1, 2, 5, 9):
                want = mpmath.besseljzero(mpf(mu), k)
                assert abs(bessel_zero(mu, k, CTX) - want) < mpf(10) ** -40

    def test_half_integer_closed_form(self):
        # J_(-1/2) is proportional to cos, so its zeros are (k - 1/2) pi
        with mp.workprec(300):
            for k in (1, 2, 3, 6):
                want = (mpf(2 * k - 1) / 2) * mp.pi
                assert abs(bessel_zero(-0.5, k, CTX) - want) < mpf(10) ** -40

    def test_first_zero_upper_bound(self):
        for mu in (-0.5, 0, 0.5, 1, 2, 5):
            with mp.workprec(300):
                j1 = bessel_zero(mu, 1, CTX_FAST)
                assert j1 < mp.sqrt(mpf(mu) + 1) * (mp.sqrt(mpf(mu) + 2) + 1)
                assert j1 < 2 * (mpf(mu) + 2)


class TestZeroTable:
    def test_monotone_and_small_residuals(self):
        table = zero_table(1, 12, CTX_FAST)
        assert all(b > a for a, b in zip(table.zeros, table.zeros[1:]))
        assert table.residual_bound < mpf(10) ** -40
        assert table.mu == 1.0

    def test_mcmahon_guess_accuracy_for_large_index(self):
        # the asymptotic form drives the zeta tail; spot-check it directly
        with mp.workprec(120):
            for mu in (0.0, 1.0):
                for k in (60, 200):
                    want = mpmath.besseljzero(mpf(mu), k)
                    assert abs(_mcmahon(mu, k) - want) < 1e-11


class TestBesselZeta:
    def test_even_arguments_match_rayleigh(self):
        ctx = PrecisionContext(256, 1e-12)
        for mu in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)):
            for n in range(1, 9):
                got = bessel_zeta_real(mu, 2 * n, ctx)
                want = to_mpf(rayleigh_sigma(mu, n))
                assert abs(got - want) <= 10 * mpf(ctx.tolerance) * want, (mu, n)

    def test_seed_values(self):
        ctx = PrecisionContext(256, 1e-12)
        assert rel_err(bessel_zeta_real(1, 2, ctx), mpf("0.125")) < 1e-11
        assert rel_err(bessel_zeta_real(0, 2, ctx), mpf("0.25")) < 1e-11
        assert rel_err(bessel_zeta_real(0, 4, ctx), mpf(1) / 32) < 1e-11

    def test_against_direct_long_summation(self):
        # independent route: sum many zeros directly (mpmath zeros for the
        # head, the asymptotic form for the bulk) plus integral + boundary
        # corrections for the remainder; at x = 6 this reference is accurate
        # to far better than 1e-20
        x = mpf(6)
        with mp.workprec(200):
            for mu in (0.0, 1.0):
                head = mp.fsum(mpmath.besseljzero(mpf(mu), k) ** -x for k in range(1, 40))
                bulk = mp.fsum(mpf(_mcmahon(mu, k)) ** -x for k in range(40, 20001))
                beta = (20001 + mu / 2 - 0.25) * mp.pi
                f_end = beta**-x
                tail = beta ** (1 - x) / ((x - 1) * mp.pi) + f_end / 2
                reference = head + bulk + tail
                got = bessel_zeta_real(mu, 6, PrecisionContext(256, 1e-18))
                assert abs(got - reference) < 1e-18 * reference

    def test_domain_and_cap(self):
        with pytest.raises(DomainError):
            bessel_zeta_real(1, 1.0, CTX_FAST)
        with pytest.raises(DomainError):
            bessel_zeta_real(-2, 3.0, CTX_FAST)
        with pytest.raises(PrecisionError):
            # 1e-30 at x = 2 needs far more zeros than the budget allows
            bessel_zeta_real(1, 2, PrecisionContext(256, 1e-30, max_terms=64))

    def test_tolerance_self_consistency(self):
        loose = PrecisionContext(256, 1e-10)
        tight = PrecisionContext(256, 1e-11)
        for x in (2.0, 3.5, 12.0):
            a = bessel_zeta_real(1, x, loose)
            b = bessel_zeta_real(1, x, tight)
            assert abs(a - b) <= 1e-10 * abs(b)


class TestThetaMu:
    def test_root_identity(self):
        # 4 theta_mu(2n)^2 must reproduce the exact n-th root of a_n(mu)
        ctx = PrecisionContext(256, 1e-13)
        from logbehave import a_mu

        with mp.workprec(320):
            for mu in (0, 1):
                for n in range(2, 21):
                    got = 4 * theta_mu(mu, 2 * n, ctx) ** 2
                    want = to_mpf(a_mu(mu, n)) ** (mpf(1) / n)
                    assert abs(got - want) <= 10 * mpf(ctx.tolerance) * want

    def test_closed_form_at_two(self):
        with mp.workprec(300):
            got = theta_mu(0, 2, PrecisionContext(256, 1e-15))
            assert rel_err(got, mp.sqrt(mpf(1) / 2)) < 1e-14

    def test_domain(self):
        with pytest.raises(DomainError):
            theta_mu(-0.5, 4.0, CTX_FAST)
        with pytest.raises(DomainError):
            theta_mu(1, 1.0, CTX_FAST)


class TestBellReal:
    def test_at_one(self):
        assert rel_err(bell_real(1, CTX), 1) < 1e-30

    def test_matches_exact_bell_numbers(self):
        with mp.workprec(320):
            for n in range(1, 31):
                got = bell_real(n, CTX)
                want = to_mpf(bell(n))
                assert abs(got - want) <= 10 * mpf(CTX.tolerance) * want

    def test_fractional_points_between_integers(self):
        b2, b25, b3 = (bell_real(x, CTX_FAST) for x in (2.0, 2.5, 3.0))
        assert b2 < b25 < b3

    def test_domain(self):
        with pytest.raises(DomainError):
            bell_real(0, CTX)

    def test_tolerance_self_consistency(self):
        loose = PrecisionContext(256, 1e-12)
        tight = PrecisionContext(256, 1e-13)
        for x in (1.5, 7.0, 26.5):
            a = bell_real(x, loose)
            b = bell_real(x, tight)
            assert abs(a - b) <= 1e-12 * abs(b)

    def test_bell_root_log_space(self):
        with mp.workprec(300):
            got = bell_root(3, CTX)
            want = to_mpf(bell(3)) ** (mpf(1) / 3)
            assert rel_err(got, want) < 1e-29


class TestLogSecondDifference:
    def test_exponential_is_log_linear(self):
        value = log_second_difference(lambda t: mp.exp(t), 2.0, 0.1, CTX)
        assert abs(value) < 1e-12

    def test_zeta_log_convex_on_sample_grid(self):
        for x in (1.5, 2.0, 3.0, 5.0, 10.0):
            value = log_second_difference(
                lambda t: riemann_zeta_real(t, CTX_FAST), x, 1e-3, CTX_FAST
            )
            assert value > 0, x

    @pytest.mark.parametrize("mu", [0, 1])
    def test_bessel_zeta_log_convex_on_sample_grid(self, mu):
        for x in (1.5, 2.0, 3.0, 5.0, 10.0):
            value = log_second_difference(
                lambda t: bessel_zeta_real(mu, t, CTX_FAST), x, 1e-3, CTX_FAST
            )
            assert value > 0, (mu, x)

    def test_bell_log_convex_on_sample_grid(self):
        for x in (1.5, 2.0, 3.0, 5.0, 10.0):
            value = log_second_difference(
                lambda t: bell_real(t, CTX_FAST), x, 1e-3, CTX_FAST
            )
            assert value > 0, x

    def test_square_is_log_concave(self):
        value = log_second_difference(lambda t: t * t, 1.0, 0.5, CTX)
        assert value < 0


class TestConcurrency:
    def test_parallel_calls_match_serial(self):
        xs = [1.5, 2.0, 3.0, 4.5, 7.0, 11.0]
        serial = [riemann_zeta_real(x, CTX_FAST) for x in xs]
        with ThreadPoolExecutor(max_workers=4) as pool:
            parallel = list(pool.map(lambda x: riemann_zeta_real(x, CTX_FAST), xs))
        assert serial == parallel
