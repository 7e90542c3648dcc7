import pytest
from mpmath import mp

from conftest import rel
from opk.errors import DomainError
from opk.freud6 import (
    ADOPTED_READING,
    BRACKET_READINGS,
    adjudicate_bracket,
    beta_freud6,
    betas_from_moments,
    consecutive_interlacing,
    convexity_function,
    eval_S,
    freud6_ladder,
    gauss_rule_S,
    interlacing_check,
    ladder_residual_freud6,
    mixed_coefficient,
    mixed_recurrence_freud6,
    moment_quadrature_freud6,
    mu_freud6,
    ode_residual_freud6,
    ode_residual_freud6_generic,
    sturm_convexity_profile,
    symmetric_chain_check,
    zero_monotonicity_report_freud6,
    zero_split,
    zero_upper_bound_freud6,
    zeros_S,
)
from opk.airy_polys import sample_points

TIGHT = mp.mpf(10) ** -40


def symmetric_points(ctx, count=5, upper=2):
    return sample_points(count, upper, ctx, lower=-upper)


class TestMoments:
    @pytest.mark.parametrize("order", [1, 3, 7])
    def test_odd_moments_vanish(self, freud, order):
        assert mu_freud6(freud(2, "0.5"), order) == 0

    @pytest.mark.parametrize("lam", ["-0.5", "0", "1"])
    @pytest.mark.parametrize("k", [0, 1, 3])
    def test_gamma_oracle_at_t0(self, freud, lam, k):
        with mp.workprec(300):
            expected = mp.gamma((mp.mpf(lam) + k + 1) / 3) / 3
        assert rel(mu_freud6(freud(0, lam), 2 * k), expected) < TIGHT

    @pytest.mark.parametrize("t", [-3, 0, 3])
    @pytest.mark.parametrize("order", [0, 4, 10])
    def test_mapping_against_quadrature(self, freud, t, order):
        p = freud(t, "0.25")
        assert rel(mu_freud6(p, order), moment_quadrature_freud6(p, order)) < TIGHT

    @pytest.mark.parametrize("lam", ["-0.9", "-0.75"])
    @pytest.mark.parametrize("t", [-3, 0, 3])
    @pytest.mark.parametrize("order", [0, 2])
    def test_quadrature_with_singular_power(self, freud, t, lam, order):
        p = freud(t, lam)
        assert rel(mu_freud6(p, order), moment_quadrature_freud6(p, order)) < TIGHT

    def test_negative_order(self, freud):
        with pytest.raises(DomainError):
            mu_freud6(freud(0, 0), -2)


class TestBetas:
    def test_first_beta_is_moment_ratio(self, freud):
        p = freud(0, "-0.5")
        coeffs = beta_freud6(p, 3)
        with mp.workprec(300):
            expected = mp.gamma(mp.mpf(1) / 2) / mp.gamma(mp.mpf(1) / 6)
        assert rel(coeffs.beta(1), expected) < TIGHT
        assert all(coeffs.alpha(n) == 0 for n in range(4))

    @pytest.mark.parametrize("t", [-3, 0, 3])
    def test_positive(self, freud, t):
        coeffs = beta_freud6(freud(t, 1), 10)
        assert all(coeffs.beta(n) > 0 for n in range(1, 11))

    def test_quadrature_moments_give_same_betas(self, freud):
        p = freud(1, 0)
        coeffs = beta_freud6(p, 4)
        moments = [moment_quadrature_freud6(p, k) for k in range(10)]
        betas, _, discrepancy, positive = betas_from_moments(moments, 4, p.ctx)
        assert positive
        for n in range(1, 5):
            assert rel(betas[n], coeffs.beta(n)) < mp.mpf(10) ** -30

    def test_airy_weight_rejected(self, airy):
        with pytest.raises(DomainError):
            beta_freud6(airy(0, 0), 3)


class TestLadder:
    @pytest.fixture
    def coeffs(self, freud):
        return beta_freud6(freud(1, 1), 10)

    @pytest.mark.parametrize("n", [1, 2, 5, 6])
    def test_ladder_residual(self, coeffs, n):
        for x in [mp.zero] + symmetric_points(coeffs.ctx):
            assert ladder_residual_freud6(n, x, coeffs).holds

    @pytest.mark.parametrize("n", [1, 3, 5])
    def test_uncorrected_form_fails_for_odd_n(self, coeffs, n):
        residuals = [ladder_residual_freud6(n, x, coeffs, parity_term=False)
                     for x in symmetric_points(coeffs.ctx)]
        assert not all(r.holds for r in residuals)

    @pytest.mark.parametrize("n", [2, 4])
    def test_uncorrected_form_holds_for_even_n(self, coeffs, n):
        for x in symmetric_points(coeffs.ctx):
            assert ladder_residual_freud6(n, x, coeffs, parity_term=False).holds

    def test_ladder_needs_two_extra_betas(self, freud):
        coeffs = beta_freud6(freud(0, 0), 4)
        with pytest.raises(DomainError):
            freud6_ladder(3, coeffs)

    @pytest.mark.parametrize("n", [1, 2, 3, 6])
    def test_ode_adopted_and_generic(self, coeffs, n):
        for x in symmetric_points(coeffs.ctx):
            assert ode_residual_freud6(n, x, coeffs).holds
            assert ode_residual_freud6_generic(n, x, coeffs).holds

    def test_ode_skips_origin(self, coeffs):
        assert ode_residual_freud6(2, 0, coeffs).skipped

    def test_unknown_reading(self, coeffs):
        with pytest.raises(DomainError):
            ode_residual_freud6(2, 1, coeffs, reading="z")

    def test_adjudication_picks_parity_factor(self, coeffs):
        outcome = adjudicate_bracket(coeffs, [2, 3, 4], symmetric_points(coeffs.ctx, 3))
        assert set(outcome) == set(BRACKET_READINGS)
        assert outcome[ADOPTED_READING]
        assert not outcome["a"] and not outcome["b"]

    def test_readings_coincide_at_minus_half(self, freud):
        coeffs = beta_freud6(freud(1, "-0.5"), 8)
        outcome = adjudicate_bracket(coeffs, [2, 3], symmetric_points(coeffs.ctx, 3))
        assert all(outcome.values())


class TestMixedRecurrence:
    @pytest.mark.parametrize("n", [0, 1, 2, 5])
    def test_residual(self, freud, n):
        p = freud(-1, "0.5")
        for x in symmetric_points(p.ctx, 4):
            assert mixed_recurrence_freud6(n, x, p).holds

    def test_coefficient_even_n(self, freud):
        coeffs = beta_freud6(freud(0, 0), 4)
        with coeffs.ctx.workprec():
            expected = eval_S(2, mp.zero, coeffs) / eval_S(0, mp.zero, coeffs)
        assert mixed_coefficient(0, coeffs) == expected


class TestZeros:
    def test_symmetric_quintuple(self, freud):
        coeffs = beta_freud6(freud(0, 0), 5)
        zeros = zeros_S(5, coeffs)
        negative, centre, positive = zero_split(zeros)
        assert len(negative) == len(positive) == 2
        assert len(centre) == 1
        assert abs(centre[0][0]) <= centre[0][1]
        for (zn, rn), (zp, rp) in zip(negative, positive):
            assert abs(zn + zp) <= rn + rp

    @pytest.mark.parametrize("n", range(2, 10))
    def test_consecutive_interlacing(self, freud, n):
        assert consecutive_interlacing(n, beta_freud6(freud(2, "0.5"), 10))

    def test_gauss_exactness(self, freud):
        p = freud(-1, 0)
        coeffs = beta_freud6(p, 5)
        nodes, weights = gauss_rule_S(5, coeffs)
        with coeffs.ctx.workprec():
            for k in range(10):
                quad = mp.fsum(w * x ** k for x, w in zip(nodes, weights))
                exact = mu_freud6(p, k)
                assert abs(quad - exact) <= TIGHT * max(abs(exact), mp.one)

    @pytest.mark.parametrize("n", [2, 5, 9])
    @pytest.mark.parametrize("t", [-3, 0, 3])
    def test_upper_bound(self, freud, n, t):
        bound, holds = zero_upper_bound_freud6(n, freud(t, 0), 0.01)
        assert holds
        assert bound > 0

    def test_upper_bound_needs_two(self, freud):
        with pytest.raises(DomainError):
            zero_upper_bound_freud6(1, freud(0, 0))

    def test_monotonicity(self, ctx):
        report = zero_monotonicity_report_freud6(4, ["-1", "1"], ["0", "1"], ctx)
        assert report and all(entry["holds"] for entry in report)


class TestInterlacingChains:
    @pytest.mark.parametrize("n", [2, 3, 4, 7])
    @pytest.mark.parametrize("k", ["0.25", "0.5", "1"])
    def test_positive_chain(self, freud, n, k):
        assert interlacing_check(n, freud(1, 0), k).holds

    @pytest.mark.parametrize("n", [2, 3, 6])
    def test_symmetric_chain(self, freud, n):
        assert symmetric_chain_check(n, freud(-2, "0.5"), "0.5").holds

    def test_k_range(self, freud):
        with pytest.raises(DomainError):
            interlacing_check(3, freud(0, 0), "1.5")

    def test_degree_range(self, freud):
        with pytest.raises(DomainError):
            interlacing_check(1, freud(0, 0), "0.5")


class TestConvexity:
    def test_regime_checked(self, freud):
        coeffs = beta_freud6(freud(-1, 0), 6)
        with pytest.raises(DomainError):
            convexity_function(3, 1, coeffs)
        coeffs = beta_freud6(freud(1, "-0.5"), 6)
        with pytest.raises(DomainError):
            convexity_function(3, 1, coeffs)

    @pytest.mark.slow
    def test_profile(self, freud):
        profile = sturm_convexity_profile(6, freud(-1, "-0.5"), samples_per_gap=16)
        assert len(profile.zones) == 4
        assert {z.classification for z in profile.zones} <= {"concave-zone", "convex-zone", "mixed"}
        assert profile.holds
