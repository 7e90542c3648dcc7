"""
Hankel determinants and recurrence coefficients of the generalised Airy
weight, together with residual certifiers for the identities they satisfy:
the log-derivative and Toda equations (exact, by row shifts), the Toda and
differential systems (Richardson derivatives), the discrete string system,
the refuted Wang system, and the large-n / large-|t| expansions.
"""
import logging
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from mpmath import mp

from .airy_moments import moment_table, mu_k_airy
from .errors import DomainError, InvalidMeasure, PrecisionExhausted
from .models import (
    Family,
    HankelCache,
    MomentTable,
    PrecisionContext,
    RecurrenceCoeffs,
    Residual,
    WeightParams,
)
from .numeric_core import RealMatrix, det, richardson_diff

logger = logging.getLogger(__name__)

MAX_ESCALATIONS = 2
STRING_GUARD_DOUBLINGS = 4
HANKEL_N_LIMIT = 40


def hankel_matrix(moments: Sequence, n: int, shifts: Optional[Sequence[int]] = None,
                  last_column_shift: int = 0) -> RealMatrix:
    """
    n×n moment matrix [μ_{i+j+shift_i}].

    Args:
        shifts: Per-row index increments (row-shift derivatives)
        last_column_shift: Increment applied to the last column only
    """
    shifts = shifts or [0] * n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            k = i + j + shifts[i] + (last_column_shift if j == n - 1 else 0)
            row.append(moments[k])
        rows.append(row)
    return RealMatrix.from_rows(rows)


def hankel_delta(n: int, p: WeightParams, moments: Optional[MomentTable] = None):
    """
    Δ_n = det[μ_{i+j}]_{i,j<n}, with Δ_0 = 1.

    Raises:
        InvalidMeasure: the determinant is not positive
    """
    if n < 0:
        raise DomainError("Hankel order must be nonnegative")
    if n == 0:
        return p.ctx.mpf(1)
    if moments is None or moments.k_max < 2 * n - 2:
        moments = moment_table(p, 2 * n - 2)
    result = det(hankel_matrix(moments.values, n), p.ctx)
    if result.singular or result.value <= 0:
        raise InvalidMeasure(f"Δ_{n} is not positive for {p.label()}")
    return result.value


def hankel_cache(p: WeightParams, N: int, moments: Optional[MomentTable] = None) -> HankelCache:
    """Δ_0 … Δ_{N+1} and σ_0 … σ_{N+1} (σ_0 = 0) from moments up to index 2N+1"""
    if moments is None or moments.k_max < 2 * N + 1:
        moments = moment_table(p, 2 * N + 1)
    ctx = p.ctx
    deltas, shifted, conditions = [ctx.mpf(1)], [ctx.mpf(0)], [ctx.mpf(1)]
    for n in range(1, N + 2):
        d = det(hankel_matrix(moments.values, n), ctx)
        s = det(hankel_matrix(moments.values, n, last_column_shift=1), ctx)
        deltas.append(d.value)
        shifted.append(s.value)
        conditions.append(d.condition)
    return HankelCache(p, tuple(deltas), tuple(shifted), tuple(conditions))


def chebyshev_recurrence(moments: Sequence, N: int, ctx: PrecisionContext) -> Tuple[List, List]:
    """
    α_0 … α_N and β_0 = 0, β_1 … β_N by the Chebyshev moment algorithm
    (needs moments up to index 2N+1).
    """
    with ctx.workprec():
        size = 2 * N + 2
        prev = [mp.zero] * size
        cur = [mp.mpf(moments[l]) for l in range(size)]
        alphas = [cur[1] / cur[0]]
        betas = [mp.zero]
        for k in range(1, N + 1):
            nxt = [mp.zero] * size
            for l in range(k, size - k):
                nxt[l] = cur[l + 1] - alphas[k - 1] * cur[l] - betas[k - 1] * prev[l]
            alphas.append(nxt[k + 1] / nxt[k] - cur[k] / cur[k - 1])
            betas.append(nxt[k] / cur[k - 1])
            prev, cur = cur, nxt
        return alphas, betas


def _coefficients_at(p: WeightParams, N: int):
    ctx = p.ctx
    moments = moment_table(p, 2 * N + 1)
    cache = hankel_cache(p, N, moments)
    with ctx.workprec():
        d, s = cache.deltas, cache.shifted
        alphas = [s[n + 1] / d[n + 1] - s[n] / d[n] for n in range(N + 1)]
        betas = [mp.zero] + [d[n - 1] * d[n + 1] / d[n] ** 2 for n in range(1, N + 1)]
        cheb_alphas, cheb_betas = chebyshev_recurrence(moments.values, N, ctx)
        discrepancy = mp.zero
        for n in range(N + 1):
            discrepancy = max(discrepancy, abs(alphas[n] - cheb_alphas[n]) / max(abs(alphas[n]), mp.one))
            if n > 0:
                discrepancy = max(discrepancy, abs(betas[n] - cheb_betas[n]) / abs(betas[n]))
        positive = all(x > 0 for x in d) and all(b > 0 for b in betas[1:])
    return alphas, betas, cache.condition, discrepancy, positive


@lru_cache(maxsize=1024)
def recurrence_from_moments(p: WeightParams, N: int,
                            max_escalations: int = MAX_ESCALATIONS) -> RecurrenceCoeffs:
    """
    α_n = σ_{n+1}/Δ_{n+1} − σ_n/Δ_n and β_n = Δ_{n−1}Δ_{n+1}/Δ_n² for n ≤ N.

    The determinant route is cross-checked against the Chebyshev moment
    algorithm; when the two disagree by more than 2^(−bits/2), or the Hankel
    pivot ratio exceeds 2^(bits/2), the precision is raised by half.

    Raises:
        PrecisionExhausted: the check still fails after ``max_escalations`` raises
    """
    if N < 0:
        raise DomainError("N must be nonnegative")
    work = p
    for escalation in range(max_escalations + 1):
        ctx = work.ctx
        alphas, betas, condition, discrepancy, positive = _coefficients_at(work, N)
        with ctx.workprec():
            limit = ctx.tiny(ctx.bits // 2)
            trusted = positive and discrepancy <= limit and condition <= 1 / limit
        if trusted:
            return RecurrenceCoeffs(work, tuple(alphas), tuple(betas), condition,
                                    discrepancy, escalation)
        if escalation < max_escalations:
            nxt = ctx.escalated()
            logger.warning("%s, N=%d: condition %s, route mismatch %s at %d bits; escalating to %d",
                           p.label(), N, mp.nstr(condition, 3), mp.nstr(discrepancy, 3),
                           ctx.bits, nxt.bits)
            work = work.with_ctx(nxt)
    raise PrecisionExhausted(
        f"recurrence coefficients for {p.label()} up to N={N} not certified at {work.bits} bits",
        report={
            "bits": work.bits,
            "condition": mp.nstr(condition, 5),
            "discrepancy": mp.nstr(discrepancy, 5),
            "positive": positive,
        },
    )


def coefficients_for(p: WeightParams, N: int) -> RecurrenceCoeffs:
    """Recurrence coefficients up to N: Hankel determinants for moderate N, the
    string recursion beyond HANKEL_N_LIMIT"""
    if N > HANKEL_N_LIMIT:
        return recurrence_from_string_equations(p, N)
    return recurrence_from_moments(p, N)


def delta_derivatives(n: int, moments: Sequence, ctx: PrecisionContext) -> Tuple:
    """
    (Δ_n, Δ_n′, Δ_n″, condition of Δ_n) without finite differences: dμ_k/dt = μ_{k+1}, so
    differentiating Δ_n shifts the moment indices of one row up by one.
    Needs moments up to index 2n.
    """
    with ctx.workprec():
        if n == 0:
            return mp.one, mp.zero, mp.zero, mp.one
        base = det(hankel_matrix(moments, n), ctx)
        first = mp.zero
        for r in range(n):
            shifts = [0] * n
            shifts[r] = 1
            first += det(hankel_matrix(moments, n, shifts), ctx).value
        second = mp.zero
        for r, s in product(range(n), repeat=2):
            shifts = [0] * n
            shifts[r] += 1
            shifts[s] += 1
            second += det(hankel_matrix(moments, n, shifts), ctx).value
        return base.value, first, second, base.condition


def _det_tolerance(ctx: PrecisionContext, condition, scale):
    return ctx.tiny(32) * max(mp.one, condition) * scale


def alpha_logderiv_check(n: int, p: WeightParams,
                         coeffs: Optional[RecurrenceCoeffs] = None) -> Residual:
    """α_n − d/dt ln(Δ_{n+1}/Δ_n) with the derivative taken exactly by row shifts"""
    if n < 0:
        raise DomainError("n must be nonnegative")
    coeffs = coeffs or recurrence_from_moments(p, n + 1)
    coeffs.require(n, "alpha_logderiv_check")
    ctx = coeffs.ctx
    moments = moment_table(coeffs.params, 2 * n + 2).values
    hi = delta_derivatives(n + 1, moments, ctx)
    lo = delta_derivatives(n, moments, ctx)
    with ctx.workprec():
        upper, lower = hi[1] / hi[0], lo[1] / lo[0]
        value = coeffs.alpha(n) - (upper - lower)
        scale = max(abs(coeffs.alpha(n)), abs(upper), abs(lower))
        condition = max(hi[3], lo[3] if n else 1)
        return Residual(value, _det_tolerance(ctx, condition, scale), scale)


def toda_equation_residual(n: int, p: WeightParams) -> Residual:
    """d²/dt² ln Δ_n − Δ_{n−1}Δ_{n+1}/Δ_n², second derivative by row shifts"""
    if n < 1:
        raise DomainError("Toda equation needs n ≥ 1")
    coeffs = recurrence_from_moments(p, n)
    ctx = coeffs.ctx
    moments = moment_table(coeffs.params, 2 * n + 2).values
    delta, first, second, condition = delta_derivatives(n, moments, ctx)
    below = delta_derivatives(n - 1, moments, ctx)[0]
    above = det(hankel_matrix(moments, n + 1), ctx)
    with ctx.workprec():
        log_second = second / delta - (first / delta) ** 2
        ratio = below * above.value / delta ** 2
        scale = max(abs(second / delta), (first / delta) ** 2, abs(ratio))
        condition = max(condition, above.condition)
        return Residual(log_second - ratio, _det_tolerance(ctx, condition, scale), scale)


def _coefficient_derivative(p: WeightParams, N: int, n: int, which: str, order: int,
                            noise, levels: int):
    def value(s):
        coeffs = recurrence_from_moments(p.with_t(s), N)
        return coeffs.alpha(n) if which == "alpha" else coeffs.beta(n)

    return richardson_diff(value, p.t, order, p.ctx, levels=levels, noise=noise)


def toda_system_residual(n: int, p: WeightParams, levels: int = 4) -> Tuple[Residual, Residual]:
    """
    dα_n/dt − (β_{n+1} − β_n) and dβ_n/dt − β_n(α_n − α_{n−1}), with the
    t-derivatives taken by Richardson extrapolation.
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    N = n + 1
    coeffs = recurrence_from_moments(p, N)
    ctx = p.ctx
    noise = max(coeffs.accuracy, ctx.epsilon)
    da = _coefficient_derivative(p, N, n, "alpha", 1, noise, levels)
    with ctx.workprec():
        a, a_prev = coeffs.alpha(n), coeffs.alpha(n - 1)
        b, b_next = coeffs.beta(n), coeffs.beta(n + 1)
        slack = ctx.tiny(ctx.bits // 2)
        scale1 = max(abs(da.value), b_next, b, mp.one)
        first = Residual(da.value - (b_next - b), da.error + slack * scale1, scale1)
    if n == 0:
        with ctx.workprec():
            second = Residual(mp.zero, slack, mp.one, note="β_0 ≡ 0")
        return first, second
    db = _coefficient_derivative(p, N, n, "beta", 1, noise, levels)
    with ctx.workprec():
        rhs = b * (a - a_prev)
        scale2 = max(abs(db.value), abs(b * a), abs(b * a_prev), mp.one)
        second = Residual(db.value - rhs, db.error + slack * scale2, scale2)
    return first, second


def diff_system_residual(n: int, p: WeightParams, levels: int = 4) -> Tuple[Residual, Residual]:
    """
    Residuals of the second-order differential system in t satisfied by
    (α_n, β_n):

        α″ + 3αα′ + α³ + (6β − t)α − (2n+λ+1) = 0
        (α′+α²+2β−t)β″ − β′² − (2αα′+2α³−2tα+2n+λ)β′ − βα′² + 4β³ − 4tβ²
            + (α⁴ − 2tα² + 2(2n+λ)α + t²)β − n(n+λ) = 0

    Derivatives come from Richardson extrapolation; tolerances propagate the
    tableau errors through the partial derivatives of each equation.
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    N = n + 1
    coeffs = recurrence_from_moments(p, N)
    ctx = p.ctx
    noise = max(coeffs.accuracy, ctx.epsilon)
    d1a = _coefficient_derivative(p, N, n, "alpha", 1, noise, levels)
    d2a = _coefficient_derivative(p, N, n, "alpha", 2, noise, levels)
    with ctx.workprec():
        t, lam = p.t, p.lam
        a, b = coeffs.alpha(n), coeffs.beta(n)
        a1, a2 = d1a.value, d2a.value
        slack = ctx.tiny(ctx.bits // 2)
        terms1 = (a2, 3 * a * a1, a ** 3, (6 * b - t) * a, 2 * n + lam + 1)
        value1 = terms1[0] + terms1[1] + terms1[2] + terms1[3] - terms1[4]
        scale1 = max(max(abs(x) for x in terms1), mp.one)
        tol1 = d2a.error + 3 * abs(a) * d1a.error + slack * scale1
        first = Residual(value1, tol1, scale1)
    if n == 0:
        with ctx.workprec():
            return first, Residual(mp.zero, slack, mp.one, note="β_0 ≡ 0")

    d1b = _coefficient_derivative(p, N, n, "beta", 1, noise, levels)
    d2b = _coefficient_derivative(p, N, n, "beta", 2, noise, levels)
    with ctx.workprec():
        b1, b2 = d1b.value, d2b.value
        k = 2 * n + lam
        lead = a1 + a ** 2 + 2 * b - t
        mid = 2 * a * a1 + 2 * a ** 3 - 2 * t * a + k
        terms2 = (
            lead * b2,
            -b1 ** 2,
            -mid * b1,
            -b * a1 ** 2,
            4 * b ** 3,
            -4 * t * b ** 2,
            (a ** 4 - 2 * t * a ** 2 + 2 * k * a + t ** 2) * b,
            -n * (n + lam),
        )
        value2 = mp.fsum(terms2)
        scale2 = max(max(abs(x) for x in terms2), mp.one)
        tol2 = (abs(lead) * d2b.error
                + abs(2 * b1 + mid) * d1b.error
                + abs(b2 - 2 * a * b1 - 2 * b * a1) * d1a.error
                + slack * scale2)
        return first, Residual(value2, tol2, scale2)


def string_system_residual(n: int, p: WeightParams,
                           coeffs: Optional[RecurrenceCoeffs] = None) -> Tuple[Residual, Residual]:
    """
    Residuals of the discrete system

        (2α_n+α_{n−1})β_n + (α_{n+1}+2α_n)β_{n+1} + α_n³ − tα_n = 2n+λ+1
        β_n³ + (β_{n+1}+β_{n−1}−2α_nα_{n−1}−2t)β_n²
            + [(β_{n+1}+α_n²−t)(β_{n−1}+α_{n−1}²−t) + (α_n+α_{n−1})(2n+λ)]β_n = n(n+λ)
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    coeffs = coeffs or recurrence_from_moments(p, n + 1)
    coeffs.require(n + 1, "string_system_residual")
    ctx = coeffs.ctx
    with ctx.workprec():
        t, lam = coeffs.params.t, coeffs.params.lam
        a, a_prev, a_next = coeffs.alpha(n), coeffs.alpha(n - 1), coeffs.alpha(n + 1)
        b, b_prev, b_next = coeffs.beta(n), coeffs.beta(n - 1), coeffs.beta(n + 1)
        slack = mp.ldexp(coeffs.accuracy, 40)

        terms1 = ((2 * a + a_prev) * b, (a_next + 2 * a) * b_next, a ** 3, -t * a, -(2 * n + lam + 1))
        scale1 = max(max(abs(x) for x in terms1), mp.one)
        first = Residual(mp.fsum(terms1), slack * scale1, scale1)

        u = b_next + a ** 2 - t
        v = b_prev + a_prev ** 2 - t
        terms2 = (
            b ** 3,
            (b_next + b_prev - 2 * a * a_prev - 2 * t) * b ** 2,
            (u * v + (a + a_prev) * (2 * n + lam)) * b,
            -n * (n + lam),
        )
        scale2 = max(max(abs(x) for x in terms2), mp.one)
        second = Residual(mp.fsum(terms2), slack * scale2, scale2)
        return first, second


def wang_system_residual(n: int, p: WeightParams,
                         coeffs: Optional[RecurrenceCoeffs] = None) -> Tuple[Residual, Residual]:
    """
    dα_n/dt − (t − α_n² − 2β_n) and dβ_n/dt − (2α_nβ_n − n − λ/2).

    This system was proposed in the literature for these coefficients and
    does not hold; the residuals are expected to stay away from zero. The
    t-derivatives are taken from the Toda identities, which are certified
    separately.
    """
    if n < 1:
        raise DomainError("the Wang system is stated for n ≥ 1")
    coeffs = coeffs or recurrence_from_moments(p, n + 1)
    coeffs.require(n + 1, "wang_system_residual")
    ctx = coeffs.ctx
    with ctx.workprec():
        t, lam = coeffs.params.t, coeffs.params.lam
        a, a_prev = coeffs.alpha(n), coeffs.alpha(n - 1)
        b, b_next = coeffs.beta(n), coeffs.beta(n + 1)
        da = b_next - b
        db = b * (a - a_prev)
        slack = mp.ldexp(coeffs.accuracy, 40)
        value1 = da - (t - a ** 2 - 2 * b)
        value2 = db - (2 * a * b - n - lam / 2)
        scale1 = max(abs(da), abs(t), a ** 2, 2 * b, mp.one)
        scale2 = max(abs(db), abs(2 * a * b), n + abs(lam) / 2, mp.one)
        return (Residual(value1, slack * scale1, scale1),
                Residual(value2, slack * scale2, scale2))


def wang_discrete_residual(n: int, p: WeightParams,
                           coeffs: Optional[RecurrenceCoeffs] = None) -> Tuple[Residual, Residual]:
    """(α_n+α_{n−1})β_n − (n + λ/2) and β_n + β_{n+1} + α_n² − t; expected nonzero"""
    if n < 1:
        raise DomainError("the Wang system is stated for n ≥ 1")
    coeffs = coeffs or recurrence_from_moments(p, n + 1)
    coeffs.require(n + 1, "wang_discrete_residual")
    ctx = coeffs.ctx
    with ctx.workprec():
        t, lam = coeffs.params.t, coeffs.params.lam
        a, a_prev = coeffs.alpha(n), coeffs.alpha(n - 1)
        b, b_next = coeffs.beta(n), coeffs.beta(n + 1)
        slack = mp.ldexp(coeffs.accuracy, 40)
        value1 = (a + a_prev) * b - (n + lam / 2)
        value2 = b + b_next + a ** 2 - t
        scale1 = max(abs((a + a_prev) * b), n + abs(lam) / 2, mp.one)
        scale2 = max(b + b_next, a ** 2, abs(t), mp.one)
        return (Residual(value1, slack * scale1, scale1),
                Residual(value2, slack * scale2, scale2))


def _string_forward(p: WeightParams, N: int, guard: int) -> Tuple[List, List]:
    work = p.with_ctx(PrecisionContext(p.bits + guard))
    m0, m1, m2 = (mu_k_airy(work, k) for k in range(3))
    with work.ctx.workprec():
        t, lam = work.t, work.lam
        alphas = [m1 / m0]
        betas = [mp.zero, m2 / m0 - alphas[0] ** 2]
        # first equation at n = 0 gives α_1
        alphas.append((lam + 1 - alphas[0] ** 3 + t * alphas[0]) / betas[1] - 2 * alphas[0])
        for n in range(1, N):
            a, a_prev = alphas[n], alphas[n - 1]
            b, b_prev = betas[n], betas[n - 1]
            v = b_prev + a_prev ** 2 - t
            # second equation is linear in β_{n+1}
            rest = (b ** 3 + (b_prev - 2 * a * a_prev - 2 * t) * b ** 2
                    + ((a ** 2 - t) * v + (a + a_prev) * (2 * n + lam)) * b
                    - n * (n + lam))
            b_next = -rest / (b * (b + v))
            betas.append(b_next)
            rhs = 2 * n + lam + 1 - a ** 3 + t * a - (2 * a + a_prev) * b
            alphas.append(rhs / b_next - 2 * a)
        return alphas[:N + 1], betas[:N + 1]


@lru_cache(maxsize=64)
def recurrence_from_string_equations(p: WeightParams, N: int) -> RecurrenceCoeffs:
    """
    α_0 … α_N, β_1 … β_N by forward iteration of the discrete system from
    α_0 = μ_1/μ_0 and β_1 = μ_2/μ_0 − α_0².

    The iteration amplifies rounding, so it runs with 8N+64 guard bits and is
    repeated with twice the guard; the result is accepted when both runs agree
    to 2^(−bits/2) relative.

    Raises:
        PrecisionExhausted: the two runs still disagree after repeated guard doubling
    """
    if N < 1:
        raise DomainError("N must be at least 1")
    ctx = p.ctx
    guard = 8 * N + 64
    for _ in range(STRING_GUARD_DOUBLINGS + 1):
        coarse = _string_forward(p, N, guard)
        fine = _string_forward(p, N, 2 * guard)
        with ctx.workprec():
            gap = mp.zero
            for x, y in zip(coarse[0] + coarse[1][1:], fine[0] + fine[1][1:]):
                gap = max(gap, abs(x - y) / max(abs(y), mp.one))
            if gap <= ctx.tiny(ctx.bits // 2):
                alphas = tuple(+x for x in fine[0])
                betas = tuple(+x for x in fine[1])
                if any(b <= 0 for b in betas[1:]):
                    raise InvalidMeasure(f"string recursion produced β ≤ 0 for {p.label()}")
                return RecurrenceCoeffs(p, alphas, betas, discrepancy=max(gap, ctx.epsilon))
        logger.info("string recursion to N=%d disagrees by %s with %d guard bits; doubling",
                    N, mp.nstr(gap, 3), guard)
        guard *= 2
    raise PrecisionExhausted(
        f"string recursion for {p.label()} to N={N} did not stabilise",
        report={"guard_bits": guard, "gap": mp.nstr(gap, 5)},
    )


KAPPA_CUBE = 10


def asympt_large_n(n: int, p: WeightParams) -> Tuple:
    """
    Large-n expansions with κ = ∛10:

        α̂_n = 2n^(1/3)/κ + κt/(15n^(1/3)) + κ²(λ+1)/(30n^(2/3))
        β̂_n = n^(2/3)/κ² + t/15 + κλ/(30n^(1/3)) + κ²t²/(900n^(2/3))
    """
    if n < 1:
        raise DomainError("large-n expansion needs n ≥ 1")
    with p.ctx.workprec():
        t, lam = p.t, p.lam
        kappa = mp.cbrt(KAPPA_CUBE)
        c = mp.cbrt(n)
        alpha = 2 * c / kappa + kappa * t / (15 * c) + kappa ** 2 * (lam + 1) / (30 * c ** 2)
        beta = c ** 2 / kappa ** 2 + t / 15 + kappa * lam / (30 * c) + kappa ** 2 * t ** 2 / (900 * c ** 2)
        return alpha, beta


def asympt_large_t(n: int, p: WeightParams, sign: int) -> Tuple:
    """
    Large-|t| expansions.

    t → +∞: α̂ = √t − (2n−2λ+1)/(4t), β̂ = n/(2√t) + n(n−2λ)/(4t²)
    t → −∞: α̂ = −(2n+λ+1)/t − (2n+λ+1)(10n²+10nλ+λ²+10n+5λ+6)/t⁴,
            β̂ = n(n+λ)/t² + 4n(n+λ)(5n²+5nλ+λ²+1)/t⁵

    Args:
        sign: +1 or −1, the end of the t axis
    """
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or −1")
    with p.ctx.workprec():
        t, lam = p.t, p.lam
        if abs(t) < 1:
            raise DomainError("large-t expansion needs |t| ≥ 1")
        if sign > 0:
            if t <= 0:
                raise DomainError("the t → +∞ expansion needs t > 0")
            root = mp.sqrt(t)
            alpha = root - (2 * n - 2 * lam + 1) / (4 * t)
            beta = n / (2 * root) + n * (n - 2 * lam) / (4 * t ** 2)
        else:
            if t >= 0:
                raise DomainError("the t → −∞ expansion needs t < 0")
            m = 2 * n + lam + 1
            alpha = -m / t - m * (10 * n ** 2 + 10 * n * lam + lam ** 2 + 10 * n + 5 * lam + 6) / t ** 4
            beta = (n * (n + lam) / t ** 2
                    + 4 * n * (n + lam) * (5 * n ** 2 + 5 * n * lam + lam ** 2 + 1) / t ** 5)
        return alpha, beta


def alpha0_asymptotic(t, lam, ctx: PrecisionContext):
    """
    Three-term α_0 expansions.

    t → +∞: √t + (2λ−1)/(4t) − (12λ²−24λ+5)/(32t^(5/2))
    t → −∞: −(λ+1)/t − (λ+1)(λ+2)(λ+3)/t⁴ − (λ+1)(λ+2)(λ+3)(3λ²+21λ+38)/t⁷
    """
    with ctx.workprec():
        t, lam = mp.mpf(t), mp.mpf(lam)
        if t == 0:
            raise DomainError("α_0 asymptotics need t ≠ 0")
        if t > 0:
            return (mp.sqrt(t) + (2 * lam - 1) / (4 * t)
                    - (12 * lam ** 2 - 24 * lam + 5) / (32 * t ** mp.mpf(2.5)))
        rising = (lam + 1) * (lam + 2) * (lam + 3)
        return -(lam + 1) / t - rising / t ** 4 - rising * (3 * lam ** 2 + 21 * lam + 38) / t ** 7


def empirical_order(err_small, err_large, ratio=2):
    """Decay exponent p with err ∝ x^(−p), measured between x and ratio·x"""
    return mp.log(abs(err_small) / abs(err_large)) / mp.log(ratio)


def conjecture_report(lam, t_values: Sequence, n_max: int, ctx: PrecisionContext) -> List[Dict]:
    """
    Grid evidence for the monotonicity conjecture on the coefficients:
    α_n increasing in t, β_{n+1} > β_n pointwise, and β_n having a single
    interior maximum at t*_n with t*_n increasing in n.

    Returns one observation dict per (item, n); nothing here is asserted.
    """
    ts = sorted(ctx.mpf(t) for t in t_values)
    table = [recurrence_from_moments(WeightParams(t, lam, Family.AIRY, ctx), n_max) for t in ts]
    observations = []
    previous_peak = None
    for n in range(n_max + 1):
        alphas = [c.alpha(n) for c in table]
        increasing = all(x < y for x, y in zip(alphas, alphas[1:]))
        observations.append({"item": "alpha-increasing-in-t", "n": n, "holds": increasing, "note": ""})
        if n == 0:
            continue
        if n < n_max:
            ordered = all(c.beta(n + 1) > c.beta(n) for c in table)
            observations.append({"item": "beta-ordered-in-n", "n": n, "holds": ordered, "note": ""})
        betas = [c.beta(n) for c in table]
        turns = sum(1 for i in range(1, len(betas) - 1)
                    if betas[i] > betas[i - 1] and betas[i] > betas[i + 1])
        rises = [y > x for x, y in zip(betas, betas[1:])]
        single = turns == 1 and rises == sorted(rises, reverse=True)
        note = ""
        if single:
            peak = ts[max(range(len(betas)), key=lambda i: betas[i])]
            note = f"t*≈{mp.nstr(peak, 6)}"
            if previous_peak is not None and peak < previous_peak:
                single = False
                note += " (not increasing in n)"
            previous_peak = peak
        observations.append({"item": "beta-single-maximum", "n": n, "holds": single, "note": note})
    return observations
