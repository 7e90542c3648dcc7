import pytest
from mpmath import mp

from conftest import rel
from opk.airy_moments import (
    moment_ode_residual,
    moment_quadrature,
    moment_table,
    mu0_airy,
    mu0_airy_halfint,
    mu0_closed_form,
    mu0_asymptotic,
    mu_k_airy,
)
from opk.errors import DomainError
from opk.models import Family, WeightParams
from opk.verify import VerifyCell, run_cell


class TestMu0:
    @pytest.mark.parametrize("lam", ["-0.5", "0", "0.5", "2", "3.75"])
    def test_gamma_oracle_at_t0(self, airy, gamma_oracle, lam):
        assert rel(mu0_airy(airy(0, lam)), gamma_oracle(lam)) < mp.mpf(10) ** -70

    def test_lambda_two_is_one(self, airy):
        assert rel(mu0_airy(airy(0, 2)), 1) < mp.mpf(10) ** -70

    def test_lambda_minus_half(self, airy):
        assert abs(mu0_airy(airy(0, "-0.5")) - mp.mpf("2.228269")) < mp.mpf(10) ** -6

    def test_lambda_at_most_minus_one_rejected(self, ctx):
        with pytest.raises(DomainError):
            WeightParams(0, -1, Family.AIRY, ctx)

    def test_positive_and_increasing_in_t(self, airy):
        values = [mu0_airy(airy(t, "0.5")) for t in (-8, -3, 0, 3, 8)]
        assert all(v > 0 for v in values)
        assert values == sorted(values)

    def test_far_negative_t_uses_quadrature(self, airy):
        # below the crossover the integral is evaluated directly
        value = mu0_airy(airy(-50, 0))
        approx = mu0_asymptotic(-50, 0, airy(0, 0).ctx)
        assert rel(value, approx) < mp.mpf(10) ** -5


class TestMomentsK:
    def test_shift_relation(self, airy):
        p = airy("1.5", "0.25")
        assert mu_k_airy(p, 3) == mu0_airy(p.shifted(3))

    def test_negative_k(self, airy):
        with pytest.raises(DomainError):
            mu_k_airy(airy(0, 0), -1)

    def test_table(self, airy, gamma_oracle):
        table = moment_table(airy(0, 1), 4)
        assert len(table) == 5
        for k in range(5):
            assert rel(table[k], gamma_oracle(1, k)) < mp.mpf(10) ** -70

    @pytest.mark.parametrize("t", [-8, -3, 0, 3, 8])
    @pytest.mark.parametrize("k", [0, 5, 12])
    def test_closed_form_against_quadrature(self, airy, t, k):
        p = airy(t, "0.5")
        assert rel(mu_k_airy(p, k), moment_quadrature(p, k)) < mp.mpf(10) ** -40


class TestIdentities:
    @pytest.mark.parametrize("t", ["-6", "-2.5", "0", "1.5", "6"])
    def test_airy_function_form(self, airy, ctx, t):
        assert rel(mu0_airy(airy(t, "-0.5")), mu0_airy_halfint(t, ctx)) < mp.mpf(10) ** -40

    @pytest.mark.parametrize("t,lam", [(-3, 0), (0, "0.5"), (3, 2), (8, "-0.5")])
    def test_moment_ode(self, airy, t, lam):
        assert moment_ode_residual(airy(t, lam)).holds


class TestAsymptotics:
    @pytest.mark.parametrize("t", [20, -20])
    def test_correction_improves(self, airy, ctx, t):
        exact = mu0_airy(airy(t, 1))
        lead = rel(mu0_asymptotic(t, 1, ctx, terms=1), exact)
        corrected = rel(mu0_asymptotic(t, 1, ctx, terms=2), exact)
        assert corrected < lead

    def test_bad_arguments(self, ctx):
        with pytest.raises(DomainError):
            mu0_asymptotic(0, 1, ctx)
        with pytest.raises(DomainError):
            mu0_asymptotic(5, 1, ctx, terms=3)


class TestNegativeLambda:
    @pytest.mark.parametrize("lam", ["-0.5", "-0.9"])
    @pytest.mark.parametrize("t", [-8, 0, 8])
    def test_quadrature_matches_closed_form(self, airy, t, lam):
        p = airy(t, lam)
        assert rel(mu0_airy(p), moment_quadrature(p, 0)) < mp.mpf(10) ** -40

    @pytest.mark.parametrize("lam", ["-0.5", "-0.9"])
    @pytest.mark.parametrize("t", [-40, -41, -50])
    def test_far_negative_t(self, airy, ctx, t, lam):
        value = mu0_airy(airy(t, lam))
        assert value > 0
        assert rel(value, mu0_asymptotic(t, lam, ctx)) < mp.mpf(10) ** -4

    def test_moments_suite_at_minus_half(self):
        cell = VerifyCell("airy", "moments", ("0",), ("-0.5",), 0, 4, 256)
        assert {r.status for r in run_cell(cell)} == {"pass"}


@pytest.mark.parametrize("t,lam", [(-8, "-0.5"), (0, 0), (3, "0.5"), (8, 2)])
def test_log_convexity(airy, t, lam):
    table = moment_table(airy(t, lam), 20)
    with mp.workprec(300):
        for k in range(19):
            assert table[k] * table[k + 2] > table[k + 1] ** 2


@pytest.mark.slow
@pytest.mark.parametrize("lam", ["-0.5", "0", "0.5", "2"])
@pytest.mark.parametrize("t", [-45, -40, -35])
def test_routes_agree_in_overlap_band(ctx, t, lam):
    closed = mu0_closed_form(ctx.mpf(t), ctx.mpf(lam), ctx.bits)
    quad = moment_quadrature(WeightParams(t, lam, Family.AIRY, ctx), 0)
    assert rel(closed, quad) < mp.mpf(10) ** -40
