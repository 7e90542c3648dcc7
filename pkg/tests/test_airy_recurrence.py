import pytest
from mpmath import mp

from conftest import gamma_moment, rel
from opk.airy_recurrence import (
    alpha0_asymptotic,
    alpha_logderiv_check,
    asympt_large_n,
    asympt_large_t,
    coefficients_for,
    conjecture_report,
    diff_system_residual,
    empirical_order,
    hankel_cache,
    hankel_delta,
    recurrence_from_moments,
    recurrence_from_string_equations,
    string_system_residual,
    toda_equation_residual,
    toda_system_residual,
    wang_discrete_residual,
    wang_system_residual,
)
from opk.errors import DomainError
from opk.models import Family, PrecisionContext, WeightParams

TIGHT = mp.mpf(10) ** -40


class TestHankel:
    def test_small_orders(self, airy, gamma_oracle):
        p = airy(0, 1)
        m = [gamma_oracle(1, k) for k in range(3)]
        assert hankel_delta(0, p) == 1
        assert rel(hankel_delta(1, p), m[0]) < TIGHT
        assert rel(hankel_delta(2, p), m[0] * m[2] - m[1] ** 2) < TIGHT

    def test_negative_order(self, airy):
        with pytest.raises(DomainError):
            hankel_delta(-1, airy(0, 0))

    def test_cache_is_positive(self, airy):
        cache = hankel_cache(airy(3, "0.5"), 6)
        assert all(d > 0 for d in cache.deltas)

    @pytest.mark.slow
    @pytest.mark.parametrize("lam", ["-0.5", "0", "0.5", "2"])
    @pytest.mark.parametrize("t", [-8, -3, 0, 3, 8])
    def test_positive_through_order_twenty(self, t, lam):
        p = WeightParams(t, lam, Family.AIRY, PrecisionContext.for_hankel(20))
        cache = hankel_cache(p, 19)
        assert len(cache.deltas) == 21
        assert all(d > 0 for d in cache.deltas)


class TestCoefficients:
    def test_alpha0_spot_value(self, airy):
        coeffs = recurrence_from_moments(airy(0, 2), 3)
        assert abs(coeffs.alpha(0) - mp.mpf("1.287790")) < mp.mpf(10) ** -6
        assert coeffs.beta(0) == 0

    def test_first_coefficients_from_gamma(self, airy):
        coeffs = recurrence_from_moments(airy(0, "0.5"), 2)
        m0, m1, m2 = (gamma_moment("0.5", k) for k in range(3))
        assert rel(coeffs.alpha(0), m1 / m0) < TIGHT
        assert rel(coeffs.beta(1), m2 / m0 - (m1 / m0) ** 2) < TIGHT

    @pytest.mark.parametrize("t", [-8, 0, 8])
    def test_positive_betas(self, airy, t):
        coeffs = recurrence_from_moments(airy(t, 0), 10)
        assert all(coeffs.beta(n) > 0 for n in range(1, 11))
        assert coeffs.accuracy < mp.mpf(10) ** -30

    def test_string_route_agrees(self, airy):
        p = airy(1, 1)
        hankel = recurrence_from_moments(p, 10)
        string = recurrence_from_string_equations(p, 10)
        for n in range(11):
            assert rel(string.alpha(n), hankel.alpha(n)) < mp.mpf(10) ** -30
            if n:
                assert rel(string.beta(n), hankel.beta(n)) < mp.mpf(10) ** -30

    def test_coefficients_for_moderate_n_uses_hankel(self, airy):
        p = airy(0, 0)
        assert coefficients_for(p, 5) is recurrence_from_moments(p, 5)

    def test_negative_N(self, airy):
        with pytest.raises(DomainError):
            recurrence_from_moments(airy(0, 0), -1)


class TestExactIdentities:
    @pytest.mark.parametrize("n", [0, 1, 3, 5])
    def test_alpha_logderiv(self, airy, n):
        assert alpha_logderiv_check(n, airy(2, "0.5")).holds

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_toda_equation(self, airy, n):
        assert toda_equation_residual(n, airy(-3, 2)).holds

    @pytest.mark.parametrize("t,lam", [(1, 1), (-3, 0), (3, "0.5")])
    def test_string_system(self, airy, t, lam):
        p = airy(t, lam)
        coeffs = recurrence_from_moments(p, 9)
        for n in range(0, 9):
            first, second = string_system_residual(n, p, coeffs)
            assert first.holds and second.holds


class TestWangSystem:
    def test_refuted_at_reference_point(self, airy):
        p = airy(1, 1)
        first, second = wang_system_residual(2, p)
        assert not (first.holds and second.holds)
        assert max(abs(first.value), abs(second.value)) > mp.mpf(10) ** -2
        string = string_system_residual(2, p)
        assert all(r.holds for r in string)

    def test_discrete_companion_refuted(self, airy):
        first, second = wang_discrete_residual(2, airy(1, 1))
        assert not (first.holds and second.holds)

    def test_needs_positive_n(self, airy):
        with pytest.raises(DomainError):
            wang_system_residual(0, airy(1, 1))


@pytest.mark.slow
class TestDerivativeSystems:
    @pytest.mark.parametrize("n", [0, 1, 3])
    def test_toda_system(self, airy, n):
        first, second = toda_system_residual(n, airy(1, "0.5"))
        assert first.holds and second.holds

    @pytest.mark.parametrize("n", [0, 2])
    def test_differential_system(self, airy, n):
        first, second = diff_system_residual(n, airy(-1, 1))
        assert first.holds and second.holds


class TestAsymptotics:
    def test_large_t_error_shrinks(self, airy):
        errors = []
        for t in (25, 50):
            p = airy(t, "0.5")
            alpha, beta = asympt_large_t(2, p, 1)
            coeffs = recurrence_from_moments(p, 2)
            errors.append(abs(coeffs.alpha(2) - alpha))
        assert errors[1] < errors[0]

    def test_large_negative_t_order(self, airy):
        errors = []
        for t in (-25, -50):
            p = airy(t, 0)
            alpha, _ = asympt_large_t(0, p, -1)
            errors.append(abs(recurrence_from_moments(p, 1).alpha(0) - alpha))
        assert abs(empirical_order(*errors) - 7) < mp.mpf("0.3")

    def test_sign_mismatch(self, airy):
        with pytest.raises(DomainError):
            asympt_large_t(1, airy(5, 0), -1)
        with pytest.raises(DomainError):
            asympt_large_t(1, airy(5, 0), 0)

    def test_large_n_needs_positive_n(self, airy):
        with pytest.raises(DomainError):
            asympt_large_n(0, airy(0, 0))

    def test_alpha0_three_terms(self, airy, ctx):
        p = airy(-30, 1)
        alpha = recurrence_from_moments(p, 1).alpha(0)
        assert rel(alpha0_asymptotic(-30, 1, ctx), alpha) < mp.mpf(10) ** -6

    def test_empirical_order(self):
        assert abs(empirical_order(4, 1, 2) - 2) < mp.mpf(10) ** -10


def test_conjecture_report_items(ctx):
    items = conjecture_report("0.5", ["-3", "0", "3"], 3, ctx)
    names = {item["item"] for item in items}
    assert names == {"alpha-increasing-in-t", "beta-ordered-in-n", "beta-single-maximum"}
    assert {item["n"] for item in items} == {0, 1, 2, 3}
