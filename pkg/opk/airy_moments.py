"""
Moments of the generalised Airy weight x^λ exp(−x³/3 + tx) on (0, ∞).

The primary route is the three-term 1F2 closed form, evaluated with guard bits
sized to the cancellation between its terms; far on the negative t axis the
defining integral is used instead. Both routes double as oracles for each
other.
"""
import logging
from functools import lru_cache
from typing import Tuple

from mpmath import mp

from .errors import DomainError, PrecisionEscalation
from .models import Family, MomentTable, PrecisionContext, Residual, WeightParams
from .numeric_core import airy_ai_bi, gamma_fn, half_line_moment, hyp1f2

logger = logging.getLogger(__name__)

# Below this t the 1F2 terms cancel by more than a third of the mantissa
QUADRATURE_BELOW_T = -40

BASE_GUARD_BITS = 32
MAX_GUARD_FACTOR = 8


def _closed_form_terms(t, lam, ctx: PrecisionContext) -> Tuple:
    third = mp.mpf(1) / 3
    z = t ** 3 / 9
    first = (mp.power(3, (lam - 2) / 3) * gamma_fn((lam + 1) / 3, ctx)
             * hyp1f2((lam + 1) / 3, third, 2 * third, z, ctx))
    second = (mp.power(3, (lam - 1) / 3) * t * gamma_fn((lam + 2) / 3, ctx)
              * hyp1f2((lam + 2) / 3, 2 * third, 4 * third, z, ctx))
    third_term = (mp.power(3, lam / 3) * t ** 2 / 2 * gamma_fn(lam / 3 + 1, ctx)
                  * hyp1f2(lam / 3 + 1, 4 * third, 5 * third, z, ctx))
    return first, second, third_term


@lru_cache(maxsize=4096)
def mu0_closed_form(t, lam, bits: int):
    """μ0 by the 1F2 terms at any t, with guard bits grown until the cancellation is covered"""
    guard = BASE_GUARD_BITS
    while True:
        work = PrecisionContext(bits + guard)
        with work.workprec():
            terms = _closed_form_terms(mp.mpf(t), mp.mpf(lam), work)
            total = mp.fsum(terms)
            biggest = max(abs(term) for term in terms)
            if total <= 0:
                if guard > MAX_GUARD_FACTOR * bits:
                    raise PrecisionEscalation(
                        f"μ0 closed form lost its sign at t={mp.nstr(t, 8)}, λ={mp.nstr(lam, 8)}",
                        suggested_bits=2 * bits,
                    )
                logger.debug("μ0 closed form lost its sign at t=%s; retrying with more guard", mp.nstr(t, 8))
                guard += max(bits, mp.mag(biggest))
                continue
            cancellation = max(0, mp.mag(biggest) - mp.mag(total))
        if cancellation <= guard - 24:
            with mp.workprec(bits):
                return +total
        logger.debug("μ0 closed form cancels %d bits at t=%s; retrying with more guard",
                     cancellation, mp.nstr(t, 8))
        guard = cancellation + 64


def _peak_scale(t, lam):
    """Location of the integrand's maximum, or its decay length when it has none"""
    try:
        roots = mp.polyroots([1, 0, -t, -lam], maxsteps=200, extraprec=64)
    except mp.NoConvergence:
        roots = []
    peaks = [mp.re(r) for r in roots if abs(mp.im(r)) < mp.mpf(10) ** -10 and mp.re(r) > 0]
    if peaks:
        return max(peaks)
    return 1 / (1 + abs(t))


def moment_quadrature(p: WeightParams, k: int = 0):
    """
    μ_k(t;λ) by tanh-sinh quadrature of the defining integral.

    Breakpoints are placed around the integrand's peak so that the rule sees a
    smooth function on each piece; for λ + k < 0 the power is substituted away.
    """
    ctx = p.ctx
    with ctx.workprec():
        a = p.lam + k
        t = p.t
        scale = _peak_scale(t, a)
        points = [scale * f for f in (mp.mpf(1) / 4, mp.mpf(1) / 2, 1, 2, 4)]

    return half_line_moment(a, lambda x: t * x - x ** 3 / 3, ctx, points=points)


@lru_cache(maxsize=4096)
def _mu0_quadrature(t, lam, bits: int):
    p = WeightParams(t, lam, Family.AIRY, PrecisionContext(bits))
    return moment_quadrature(p, 0)


def mu0_airy(p: WeightParams):
    """
    μ0(t;λ) = ∫₀^∞ x^λ exp(−x³/3 + tx) dx.

    Raises:
        DomainError: λ ≤ −1
        PrecisionEscalation: a hypergeometric series did not converge
    """
    if p.lam <= -1:
        raise DomainError("μ0 needs λ > −1")
    if p.t <= QUADRATURE_BELOW_T:
        logger.debug("μ0 at t=%s by quadrature", mp.nstr(p.t, 8))
        return _mu0_quadrature(p.t, p.lam, p.bits)
    return mu0_closed_form(p.t, p.lam, p.bits)


def mu_k_airy(p: WeightParams, k: int):
    """μ_k(t;λ) = μ0(t;λ+k)"""
    if k < 0:
        raise DomainError("moment index must be nonnegative")
    return mu0_airy(p.shifted(k))


def moment_table(p: WeightParams, k_max: int) -> MomentTable:
    """μ_0 … μ_kmax for one Airy weight"""
    return MomentTable(p, tuple(mu_k_airy(p, k) for k in range(k_max + 1)))


def mu0_airy_halfint(t, ctx: PrecisionContext):
    """μ0(t;−½) = π^(3/2) 2^(−1/3) [Ai²(τ) + Bi²(τ)], τ = 2^(−2/3) t"""
    with ctx.workprec():
        tau = mp.cbrt(2) ** -2 * mp.mpf(t)
        ai, bi = airy_ai_bi(tau, ctx)
        return mp.pi ** mp.mpf(1.5) / mp.cbrt(2) * (ai ** 2 + bi ** 2)


def moment_ode_residual(p: WeightParams) -> Residual:
    """
    μ_3 − tμ_1 − (λ+1)μ_0, the moment ODE φ‴ − tφ′ − (λ+1)φ = 0 evaluated
    with φ^(k) = μ_k.
    """
    m0, m1, m3 = mu_k_airy(p, 0), mu_k_airy(p, 1), mu_k_airy(p, 3)
    with p.ctx.workprec():
        terms = (m3, p.t * m1, (p.lam + 1) * m0)
        value = terms[0] - terms[1] - terms[2]
        scale = max(abs(x) for x in terms)
        return Residual(value, p.ctx.tiny(24) * scale, scale)


def mu0_asymptotic(t, lam, ctx: PrecisionContext, terms: int = 2):
    """
    Large-|t| approximation of μ0(t;λ).

    t → +∞: t^(λ/2−1/4) √π exp(⅔t^(3/2)) [1 + (12λ²−24λ+5)/(48t^(3/2))]
    t → −∞: Γ(λ+1) (−t)^(−λ−1) [1 + (λ+1)(λ+2)(λ+3)/(3t³)]

    Args:
        terms: 1 for the leading term only, 2 with the correction
    """
    if terms not in (1, 2):
        raise DomainError("terms must be 1 or 2")
    with ctx.workprec():
        t, lam = mp.mpf(t), mp.mpf(lam)
        if t == 0:
            raise DomainError("μ0 asymptotics need t ≠ 0")
        if t > 0:
            lead = t ** (lam / 2 - mp.mpf(1) / 4) * mp.sqrt(mp.pi) * mp.exp(2 * t ** mp.mpf(1.5) / 3)
            correction = (12 * lam ** 2 - 24 * lam + 5) / (48 * t ** mp.mpf(1.5))
        else:
            lead = mp.gamma(lam + 1) * (-t) ** (-lam - 1)
            correction = (lam + 1) * (lam + 2) * (lam + 3) / (3 * t ** 3)
        if terms == 1:
            return lead
        return lead * (1 + correction)
