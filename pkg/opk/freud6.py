"""
Generalised sextic Freud polynomials S_n(x;t,λ), orthogonal with respect to
|x|^(2λ+1) exp(−x⁶ + tx²) on the real line.

The weight is even, so α_n ≡ 0 and only β_n is computed. Even moments come
from the Airy moment engine through y = x², y = 3^(−1/3)u.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from mpmath import mp

from .airy_moments import mu0_airy
from .airy_polys import (
    christoffel_weights,
    eval_P_derivs,
    eval_P_sequence,
    interlaces,
    strictly_increasing,
)
from .airy_recurrence import hankel_matrix
from .errors import DegenerateInput, DomainError, InvalidMeasure, PrecisionEscalation, PrecisionExhausted
from .log import warn_once
from .models import (
    Family,
    MomentTable,
    PrecisionContext,
    RecurrenceCoeffs,
    Residual,
    WeightParams,
    ZeroSet,
)
from .numeric_core import SymTridiag, det, half_line_moment, tridiag_eigs

logger = logging.getLogger(__name__)

SLACK_BITS = 40
MAX_ESCALATIONS = 2

# Candidate values of the parity bracket in the printed T_n
BRACKET_READINGS = {
    "a": lambda n: 1 - (-1) ** (n - 1),
    "b": lambda n: (1 - (-1) ** n) - 1,
    "c": lambda n: 1 - (-1) ** n,
}
ADOPTED_READING = "c"


class Freud6Coeffs(RecurrenceCoeffs):
    """Recurrence coefficients of the sextic Freud weight; every α_n is 0"""

    @classmethod
    def from_betas(cls, params: WeightParams, betas: Sequence, condition=1,
                   discrepancy=0, escalations: int = 0) -> "Freud6Coeffs":
        zeros = tuple(mp.zero for _ in betas)
        return cls(params, zeros, tuple(betas), condition, discrepancy, escalations)


@dataclass(frozen=True)
class Freud6Ladder:
    """
    Coefficients of xS_n′ = 𝒜_nS_{n−1} − ℬ_nS_n at one degree:
    𝒜_n = 6xβ_nC_n and ℬ_n = 6x²β_nD_n + (λ+½)[1−(−1)^n].

    Attributes:
        betas: (β_{n−1}, β_n, β_{n+1}, β_{n+2})
    """
    n: int
    t: object
    lam: object
    betas: Tuple

    @property
    def parity(self):
        """(λ+½)[1−(−1)^n]: 0 for even n, 2λ+1 for odd n"""
        return (self.lam + mp.mpf(1) / 2) * (1 - (-1) ** self.n)

    def C(self, x):
        prev, b, nxt, nxt2 = self.betas
        return x ** 4 - self.t / 3 + x ** 2 * (b + nxt) + nxt2 * nxt + (nxt + b) ** 2 + prev * b

    def D(self, x):
        prev, b, nxt, _ = self.betas
        return x ** 2 + prev + b + nxt

    def A(self, x):
        return 6 * x * self.betas[1] * self.C(x)

    def B(self, x, with_parity: bool = True):
        value = 6 * x ** 2 * self.betas[1] * self.D(x)
        return value + self.parity if with_parity else value


def freud6_ladder(n: int, coeffs: RecurrenceCoeffs) -> Freud6Ladder:
    """Ladder descriptor of degree n; needs β up to index n+2"""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    coeffs.require(n + 2, "freud6_ladder")
    b = coeffs.beta
    return Freud6Ladder(n, coeffs.params.t, coeffs.params.lam, (b(n - 1), b(n), b(n + 1), b(n + 2)))


@dataclass
class ConvexityZone:
    """
    One scanned window [x_k, x_{k+2}] of consecutive zeros.

    Attributes:
        classification: concave-zone (F increasing), convex-zone (F decreasing) or mixed
        holds: whether the gaps behave as predicted; None for mixed or unresolved zones
    """
    k: int
    lo: object
    hi: object
    classification: str
    gap_left: object
    gap_right: object
    holds: Optional[bool]


@dataclass
class ConvexityProfile:
    """Sturm convexity scan of S_n at λ = −½, t < 0"""
    t: object
    n: int
    zones: List[ConvexityZone] = field(default_factory=list)
    printed_deviation: object = 0

    @property
    def holds(self) -> bool:
        return all(z.holds is not False for z in self.zones)


@dataclass
class ChainReport:
    """Outcome of an interlacing chain comparison"""
    holds: bool
    length: int
    broken_at: Optional[int] = None
    note: str = ""


def _slack(coeffs: RecurrenceCoeffs):
    return mp.ldexp(coeffs.accuracy, SLACK_BITS)


def _require_freud(p: WeightParams):
    if p.family is not Family.FREUD6:
        raise DomainError(f"{p.label()} is not a sextic Freud weight")


def mu_freud6(p: WeightParams, order: int):
    """
    μ_order = ∫ x^order |x|^(2λ+1) exp(−x⁶ + tx²) dx; zero for odd order,
    3^(−(λ+k+1)/3) μ0(3^(−1/3)t; λ+k) for order 2k.
    """
    if order < 0:
        raise DomainError("moment order must be nonnegative")
    ctx = p.ctx
    if order % 2:
        return ctx.mpf(0)
    k = order // 2
    with ctx.workprec():
        lam = p.lam + k
        airy = WeightParams(mp.cbrt(3) ** -1 * p.t, lam, Family.AIRY, ctx)
        return mp.power(3, -(lam + 1) / 3) * mu0_airy(airy)


def moment_table_freud6(p: WeightParams, order_max: int) -> MomentTable:
    return MomentTable(p, tuple(mu_freud6(p, j) for j in range(order_max + 1)))


def moment_quadrature_freud6(p: WeightParams, order: int):
    """μ_order by tanh-sinh on the half line, doubled by symmetry"""
    ctx = p.ctx
    if order % 2:
        return ctx.mpf(0)
    with ctx.workprec():
        a = 2 * p.lam + 1 + order
        t = p.t
        try:
            roots = mp.polyroots([6, 0, -2 * t, -a], maxsteps=200, extraprec=64)
        except mp.NoConvergence:
            roots = []
        peaks = [mp.sqrt(mp.re(r)) for r in roots
                 if abs(mp.im(r)) < mp.mpf(10) ** -10 and mp.re(r) > 0]
        scale = max(peaks) if peaks else 1 / mp.sqrt(1 + abs(t))
        points = [scale * f for f in (mp.mpf(1) / 4, mp.mpf(1) / 2, 1, 2, 4)]

    return 2 * half_line_moment(a, lambda x: t * x ** 2 - x ** 6, ctx, points=points)


def _even_odd_hankel(even_moments: Sequence, n: int, ctx: PrecisionContext):
    """Δ_n as E_{⌈n/2⌉}·O_{⌊n/2⌋} from m_k = μ_{2k}"""
    e_size, o_size = (n + 1) // 2, n // 2
    with ctx.workprec():
        e = det(hankel_matrix(even_moments, e_size), ctx).value if e_size else mp.one
        o = det(hankel_matrix(even_moments[1:], o_size), ctx).value if o_size else mp.one
        return e * o


def betas_from_moments(moments: Sequence, N: int, ctx: PrecisionContext) -> Tuple:
    """
    β_0 = 0, β_1 … β_N from a symmetric moment sequence (odd entries zero)
    by full Hankel determinants, with the split even/odd factorisation as a
    second route.

    Returns:
        (betas, condition, discrepancy, positive)
    """
    even = [moments[2 * k] for k in range(N + 1)]
    deltas, split, conditions = [ctx.mpf(1)], [ctx.mpf(1)], [ctx.mpf(1)]
    for n in range(1, N + 2):
        full = det(hankel_matrix(moments, n), ctx)
        deltas.append(full.value)
        conditions.append(full.condition)
        split.append(_even_odd_hankel(even, n, ctx))
    with ctx.workprec():
        betas = [mp.zero] + [deltas[n - 1] * deltas[n + 1] / deltas[n] ** 2 for n in range(1, N + 1)]
        split_betas = [mp.zero] + [split[n - 1] * split[n + 1] / split[n] ** 2 for n in range(1, N + 1)]
        discrepancy = mp.zero
        for n in range(1, N + 1):
            discrepancy = max(discrepancy, abs(betas[n] - split_betas[n]) / abs(betas[n]))
        positive = all(d > 0 for d in deltas) and all(b > 0 for b in betas[1:])
        return betas, max(conditions), discrepancy, positive


@lru_cache(maxsize=1024)
def beta_freud6(p: WeightParams, N: int, max_escalations: int = MAX_ESCALATIONS) -> Freud6Coeffs:
    """
    β_n = Δ_{n−1}Δ_{n+1}/Δ_n² for n ≤ N (moments up to order 2N).

    Raises:
        PrecisionExhausted: the two Hankel routes still disagree after escalation
    """
    _require_freud(p)
    if N < 0:
        raise DomainError("N must be nonnegative")
    work = p
    for escalation in range(max_escalations + 1):
        ctx = work.ctx
        moments = moment_table_freud6(work, 2 * N + 1).values
        betas, condition, discrepancy, positive = betas_from_moments(moments, N, ctx)
        with ctx.workprec():
            limit = ctx.tiny(ctx.bits // 2)
            trusted = positive and discrepancy <= limit and condition <= 1 / limit
        if trusted:
            return Freud6Coeffs.from_betas(work, betas, condition, discrepancy, escalation)
        if escalation < max_escalations:
            nxt = ctx.escalated()
            logger.warning("%s, N=%d: Hankel routes disagree by %s at %d bits; escalating to %d",
                           p.label(), N, mp.nstr(discrepancy, 3), ctx.bits, nxt.bits)
            work = work.with_ctx(nxt)
    raise PrecisionExhausted(
        f"sextic Freud β up to N={N} not certified for {p.label()}",
        report={"bits": work.bits, "condition": mp.nstr(condition, 5),
                "discrepancy": mp.nstr(discrepancy, 5), "positive": positive},
    )


def eval_S(n: int, x, coeffs: RecurrenceCoeffs):
    """S_n(x) by S_{n+1} = xS_n − β_nS_{n−1}"""
    return eval_P_sequence(n, x, coeffs)[n]


def eval_S_derivs(n: int, x, coeffs: RecurrenceCoeffs) -> Tuple:
    return eval_P_derivs(n, x, coeffs)


def zeros_S(n: int, coeffs: RecurrenceCoeffs) -> ZeroSet:
    """Zeros of S_n: eigenvalues of the Jacobi matrix with zero diagonal and √β off it"""
    if n < 1:
        return ZeroSet(n, (), (), coeffs.params)
    coeffs.require(n - 1, "zeros_S")
    try:
        jacobi = SymTridiag.jacobi([mp.zero] * n, coeffs.betas, n)
    except DomainError as exc:
        raise InvalidMeasure(str(exc)) from exc
    spectrum = tridiag_eigs(jacobi, coeffs.ctx)
    return ZeroSet(n, spectrum.values, spectrum.radii, coeffs.params)


def zero_split(zeros: ZeroSet) -> Tuple[List, List, List]:
    """(negative zeros by increasing |x|, zeros at the origin, positive zeros ascending)"""
    negative, centre, positive = [], [], []
    for z, r in zip(zeros.zeros, zeros.radii):
        if z + r < 0:
            negative.append((z, r))
        elif z - r > 0:
            positive.append((z, r))
        else:
            centre.append((z, r))
    return list(reversed(negative)), centre, positive


def _bracketed(n: int, lam, bracket):
    return (lam + mp.mpf(1) / 2) * bracket


def ladder_residual_freud6(n: int, x, coeffs: RecurrenceCoeffs, parity_term: bool = True) -> Residual:
    """
    xS_n′(x) − 𝒜_n(x)S_{n−1}(x) + ℬ_n(x)S_n(x).

    With ``parity_term=False`` the (λ+½)[1−(−1)^n] part of ℬ_n is dropped,
    which is the form of ℬ_n published before the correction; its residual
    then fails for odd n unless λ = −½.
    """
    if n < 1:
        raise DomainError("ladder residual needs n ≥ 1")
    ladder = freud6_ladder(n, coeffs)
    with coeffs.ctx.workprec():
        x = mp.mpf(x)
        A, B = ladder.A(x), ladder.B(x, with_parity=parity_term)
        values = eval_P_sequence(n, x, coeffs)
        _, ds, _ = eval_P_derivs(n, x, coeffs)
        terms = (x * ds, -A * values[n - 1], B * values[n])
        scale = max(max(abs(v) for v in terms), abs(ladder.B(x, False) * values[n]), mp.one)
        return Residual(mp.fsum(terms), _slack(coeffs) * scale, scale)


def _ode_parts_printed(ladder: Freud6Ladder, below: Freud6Ladder, x, bracket) -> Tuple:
    t, lam = ladder.t, ladder.lam
    b = ladder.betas[1]
    sum_b = b + ladder.betas[2]
    C, D = ladder.C(x), ladder.D(x)
    rho = 2 * lam + 1
    q_parts = (2 * t * x ** 2, -6 * x ** 6, rho, -2 * x ** 2 * (2 * x ** 2 + sum_b) / C)
    braced = 6 * x ** 2 * b * D + _bracketed(ladder.n, lam, bracket)
    t_parts = (
        36 * x * b * below.C(x) * C,
        12 * x ** 3 * b,
        rho / x * braced,
        12 * x * b * D,
        -braced * (6 * x * b * D + rho / (2 * x) * bracket - 2 * t * x + 6 * x ** 5),
        -(C + 4 * x ** 4 + 2 * x ** 2 * sum_b) * braced / (x * C),
    )
    return q_parts, t_parts


def _ode_parts_generic(ladder: Freud6Ladder, below: Freud6Ladder, x) -> Tuple:
    b = ladder.betas[1]
    rho = 2 * ladder.lam + 1
    C = ladder.C(x)
    A, B = ladder.A(x), ladder.B(x)
    dA_over_A = 1 / x + (4 * x ** 3 + 2 * x * (b + ladder.betas[2])) / C
    dB = 12 * x * b * ladder.D(x) + 12 * x ** 3 * b
    dv = 6 * x ** 5 - 2 * ladder.t * x
    q_parts = (rho + 1, -x * dv, -x * dA_over_A)
    # 𝒜_n𝒜_{n−1}/(xβ_{n−1}) = 6𝒜_nC_{n−1}
    t_parts = (6 * A * below.C(x), dB, -B * (dv + (B - rho) / x), -B * dA_over_A)
    return q_parts, t_parts


def _ode_residual(n: int, x, coeffs: RecurrenceCoeffs, parts) -> Residual:
    if n < 1:
        raise DomainError("ODE residual needs n ≥ 1")
    ladder, below = freud6_ladder(n, coeffs), freud6_ladder(n - 1, coeffs)
    ctx = coeffs.ctx
    with ctx.workprec():
        x = mp.mpf(x)
        if x == 0:
            return Residual(mp.zero, mp.zero, skipped=True, note="x = 0")
        C = ladder.C(x)
        if abs(C) <= ctx.tiny(ctx.bits * 3 // 4) * max(x ** 4, abs(ladder.t), mp.one):
            logger.info("C_%d vanishes near x=%s; sample skipped", n, mp.nstr(x, 8))
            return Residual(mp.zero, mp.zero, skipped=True, note="C_n(x) = 0")
        q_parts, t_parts = parts(ladder, below, x)
        s, ds, dds = eval_P_derivs(n, x, coeffs)
        terms = (x * dds, mp.fsum(q_parts) * ds, mp.fsum(t_parts) * s)
        scale = max(abs(x * dds), max(abs(q * ds) for q in q_parts), max(abs(p * s) for p in t_parts))
        return Residual(mp.fsum(terms), _slack(coeffs) * scale, scale)


def ode_residual_freud6(n: int, x, coeffs: RecurrenceCoeffs, reading: str = ADOPTED_READING) -> Residual:
    """
    xS_n″ + Q_nS_n′ + T_nS_n with the closed forms

        Q_n = 2tx² − 6x⁶ + 2λ + 1 − 2x²(2x² + β_n + β_{n+1})/C_n
        T_n = 36xβ_nC_{n−1}C_n + 12x³β_n + (2λ+1)/x·{6x²β_nD_n + (λ+½)K}
              + 12xβ_nD_n − {6x²β_nD_n + (λ+½)K}{6xβ_nD_n + (2λ+1)K/(2x) − 2tx + 6x⁵}
              − {C_n + 4x⁴ + 2x²(β_n+β_{n+1})}{6x²β_nD_n + (λ+½)K}/(xC_n)

    where K is the parity bracket under ``reading`` (see BRACKET_READINGS).
    """
    if reading not in BRACKET_READINGS:
        raise DomainError(f"unknown bracket reading '{reading}'")
    bracket = BRACKET_READINGS[reading](n)
    return _ode_residual(n, x, coeffs, lambda l, b, y: _ode_parts_printed(l, b, y, bracket))


def ode_residual_freud6_generic(n: int, x, coeffs: RecurrenceCoeffs) -> Residual:
    """
    The ODE residual assembled from 𝒜_n, ℬ_n:
    Q = ρ + 1 − xv′ − x𝒜′/𝒜, T = 𝒜_n𝒜_{n−1}/(xβ_{n−1}) + ℬ′ − ℬ[v′ + (ℬ−ρ)/x] − ℬ𝒜′/𝒜
    with ρ = 2λ+1 and v = x⁶ − tx².
    """
    return _ode_residual(n, x, coeffs, _ode_parts_generic)


def adjudicate_bracket(coeffs: RecurrenceCoeffs, degrees: Sequence[int], points: Sequence) -> Dict[str, bool]:
    """
    Evaluate the printed ODE under every bracket reading at the given
    degrees and points; a reading is consistent when all its residuals hold.
    """
    outcome = {}
    for name in BRACKET_READINGS:
        consistent = True
        for n in degrees:
            for x in points:
                res = ode_residual_freud6(n, x, coeffs, reading=name)
                if not res.holds:
                    consistent = False
                    break
            if not consistent:
                break
        outcome[name] = consistent
    logger.info("bracket readings consistent with the ODE: %s",
                ", ".join(k for k, v in outcome.items() if v) or "none")
    return outcome


def _value_and_slope_at_zero(k: int, coeffs: RecurrenceCoeffs) -> Tuple:
    with coeffs.ctx.workprec():
        s, ds, _ = eval_P_derivs(k, mp.zero, coeffs)
        return s, ds


def mixed_coefficient(n: int, coeffs: RecurrenceCoeffs):
    """
    a_n = S_{n+2}(0)/S_n(0) for even n, S′_{n+2}(0)/S′_n(0) for odd n.

    Raises:
        DegenerateInput: the active denominator vanishes
    """
    s_n, ds_n = _value_and_slope_at_zero(n, coeffs)
    s_up, ds_up = _value_and_slope_at_zero(n + 2, coeffs)
    with coeffs.ctx.workprec():
        if n % 2 == 0:
            if s_n == 0:
                raise DegenerateInput(f"S_{n}(0) vanishes for even n={n}")
            return s_up / s_n
        if ds_n == 0:
            raise DegenerateInput(f"S_{n}′(0) vanishes for odd n={n}")
        return ds_up / ds_n


def mixed_recurrence_freud6(n: int, x, p: WeightParams) -> Residual:
    """x²S_n(x;λ+1) − xS_{n+1}(x;λ) + (β_{n+1} + a_n)S_n(x;λ)"""
    _require_freud(p)
    if n < 0:
        raise DomainError("n must be nonnegative")
    coeffs = beta_freud6(p, n + 2)
    shifted = beta_freud6(p.shifted(1), n + 2)
    a_n = mixed_coefficient(n, coeffs)
    with p.ctx.workprec():
        x = mp.mpf(x)
        values = eval_P_sequence(n + 1, x, coeffs)
        lhs = x ** 2 * eval_S(n, x, shifted)
        shift = coeffs.beta(n + 1) + a_n
        terms = (lhs, -x * values[n + 1], shift * values[n])
        scale = max(max(abs(v) for v in terms), abs(coeffs.beta(n + 1) * values[n]), mp.one)
        accuracy = max(coeffs.accuracy, shifted.accuracy)
        return Residual(mp.fsum(terms), mp.ldexp(accuracy, SLACK_BITS) * scale, scale)


def _chain_holds(chain: List[Tuple]) -> ChainReport:
    """Strict ascent of (midpoint, radius) entries, by disjoint enclosures"""
    for i, ((x, rx), (y, ry)) in enumerate(zip(chain, chain[1:])):
        if x + rx < y - ry:
            continue
        if x < y:
            raise PrecisionEscalation(f"enclosures {i} and {i + 1} of the interlacing chain overlap")
        return ChainReport(False, len(chain), broken_at=i)
    return ChainReport(True, len(chain))


def _chain_families(n: int, p: WeightParams, k) -> Dict[str, ZeroSet]:
    if n < 2:
        raise DomainError("interlacing needs n ≥ 2")
    with p.ctx.workprec():
        k = mp.mpf(k)
        if not 0 < k <= 1:
            raise DomainError("k must lie in (0, 1]")
    families = {
        "n": zeros_S(n, beta_freud6(p, n)),
        "lam": zeros_S(n - 1, beta_freud6(p, n)),
        "lam+1": zeros_S(n - 1, beta_freud6(p.shifted(1), n)),
    }
    if k != 1:
        families["lam+k"] = zeros_S(n - 1, beta_freud6(p.shifted(k), n))
    return families


def _positive_order(n: int, families: Dict[str, ZeroSet]) -> List[Tuple[str, int]]:
    """Expected ascending order of positive zeros as (family, index from the origin)"""
    triple = [name for name in ("lam", "lam+k", "lam+1") if name in families]
    lower = len(zero_split(families["lam"])[2])
    upper = len(zero_split(families["n"])[2])
    order = []
    if n % 2 == 0:
        for i in range(upper):
            order.append(("n", i))
            if i < lower:
                order.extend((name, i) for name in triple)
    else:
        for i in range(upper):
            order.extend((name, i) for name in triple)
            order.append(("n", i))
    return order


def interlacing_check(n: int, p: WeightParams, k) -> ChainReport:
    """
    Positive-axis chain among the zeros of S_n(·;λ), S_{n−1}(·;λ),
    S_{n−1}(·;λ+k), S_{n−1}(·;λ+1): for even n it opens with a zero of S_n,
    for odd n with the triple; k = 1 collapses the triple to a pair.

    Raises:
        PrecisionEscalation: neighbouring enclosures overlap
    """
    _require_freud(p)
    families = _chain_families(n, p, k)
    positive = {name: zero_split(z)[2] for name, z in families.items()}
    order = _positive_order(n, families)
    if any(i >= len(positive[name]) for name, i in order):
        return ChainReport(False, len(order), note="zero count does not match the chain")
    chain = [(mp.zero, mp.zero)] + [positive[name][i] for name, i in order]
    return _chain_holds(chain)


def symmetric_chain_check(n: int, p: WeightParams, k) -> ChainReport:
    """
    The chain over the whole real line: mirrored negative chain, the zeros at
    the origin, then the positive chain. Negative zeros decrease in λ, so the
    triple is reversed on the negative axis.
    """
    _require_freud(p)
    warn_once(logger, "symmetric-chain",
              "the published full-line chain keeps λ < λ+k < λ+1 on the negative axis; "
              "by symmetry the negative side is checked in mirrored order")
    families = _chain_families(n, p, k)
    split = {name: zero_split(z) for name, z in families.items()}
    order = _positive_order(n, families)
    if any(i >= len(split[name][2]) or i >= len(split[name][0]) for name, i in order):
        return ChainReport(False, 0, note="zero count does not match the chain")
    negative = [split[name][0][i] for name, i in reversed(order)]
    positive = [split[name][2][i] for name, i in order]
    # odd degree: exactly one zero at the origin, shared when several families have one
    centre_owner = "n" if n % 2 else "lam"
    centres = {name: split[name][1] for name in families}
    expected_centre = {name for name in families if (name == "n") == bool(n % 2)}
    for name, found in centres.items():
        if (name in expected_centre) != bool(found) or len(found) > 1:
            return ChainReport(False, 0, note=f"unexpected zeros at the origin for {name}")
    chain = negative + centres[centre_owner] + positive
    return _chain_holds(chain)


def zero_upper_bound_freud6(n: int, p: WeightParams, epsilon=0.01) -> Tuple:
    """
    x_{1,n} < max_{1≤k≤n−1} √(c_nβ_k), c_n = 4cos²(π/(n+1)) + ε.

    Returns:
        (bound, holds)
    """
    _require_freud(p)
    if n < 2:
        raise DomainError("the bound is stated for n ≥ 2")
    coeffs = beta_freud6(p, n)
    zeros = zeros_S(n, coeffs)
    with p.ctx.workprec():
        epsilon = mp.mpf(epsilon)
        if epsilon <= 0:
            raise DomainError("ε must be positive")
        c_n = 4 * mp.cos(mp.pi / (n + 1)) ** 2 + epsilon
        bound = max(mp.sqrt(c_n * coeffs.beta(k)) for k in range(1, n))
        return bound, zeros.hi(n - 1) < bound


def zero_monotonicity_report_freud6(n: int, t_values: Sequence, lambdas: Sequence,
                                    ctx: PrecisionContext) -> List[Dict]:
    """Positive zeros of S_n increase along the t grid and along the λ grid"""
    ts = [ctx.mpf(t) for t in t_values]
    ls = [ctx.mpf(l) for l in lambdas]
    if any(b <= a for a, b in zip(ts, ts[1:])) or any(b <= a for a, b in zip(ls, ls[1:])):
        raise DomainError("monotonicity grids must be strictly increasing")
    positive = {
        (t, l): zero_split(zeros_S(n, beta_freud6(WeightParams(t, l, Family.FREUD6, ctx), n)))[2]
        for t in ts for l in ls
    }
    report = []
    for nu in range(len(positive[(ts[0], ls[0])])):
        for l in ls:
            line = [positive[(t, l)][nu] for t in ts]
            report.append({"axis": "t", "fixed": l, "nu": nu + 1, "holds": strictly_increasing(line)})
        for t in ts:
            line = [positive[(t, l)][nu] for l in ls]
            report.append({"axis": "lambda", "fixed": t, "nu": nu + 1, "holds": strictly_increasing(line)})
    return report


def consecutive_interlacing(n: int, coeffs: RecurrenceCoeffs) -> bool:
    """Zeros of S_{n−1} strictly interlace those of S_n"""
    return interlaces(zeros_S(n - 1, coeffs), zeros_S(n, coeffs))


def gauss_rule_S(n: int, coeffs: RecurrenceCoeffs, mu0=None) -> Tuple[Tuple, Tuple]:
    """n-point Gauss rule of the sextic Freud weight"""
    zeros = zeros_S(n, coeffs)
    if mu0 is None:
        mu0 = mu_freud6(coeffs.params, 0)
    return christoffel_weights(zeros, coeffs, mu0, eval_P_sequence)


def _require_convexity_regime(coeffs: RecurrenceCoeffs):
    p = coeffs.params
    if p.lam != -mp.mpf(1) / 2:
        raise DomainError("the convexity function is defined for λ = −½")
    if p.t >= 0:
        raise DomainError("the convexity function needs t < 0")
    warn_once(logger, "convexity-sign",
              "the Sturm convexity consequence is stated for t > 0 while its normal form "
              "needs t < 0; only t < 0 is evaluated")


def convexity_function(n: int, x, coeffs: RecurrenceCoeffs):
    """
    F in the normal form y″ + F y = 0 of the ODE at λ = −½:
    F = T/x − p′/2 − p²/4 with p = Q/x.
    """
    _require_convexity_regime(coeffs)
    ladder, below = freud6_ladder(n, coeffs), freud6_ladder(n - 1, coeffs)
    with coeffs.ctx.workprec():
        x = mp.mpf(x)
        t, b = ladder.t, ladder.betas[1]
        sum_b = b + ladder.betas[2]
        C, D = ladder.C(x), ladder.D(x)
        dC = 4 * x ** 3 + 2 * x * sum_b
        t_over_x = (36 * b * below.C(x) * C + 12 * x ** 2 * b + 12 * b * D
                    - 6 * x * b * D * (6 * x * b * D + 6 * x ** 5 - 2 * t * x)
                    - 6 * b * D * (C + 4 * x ** 4 + 2 * x ** 2 * sum_b) / C)
        p = 2 * t * x - 6 * x ** 5 - 2 * x * (2 * x ** 2 + sum_b) / C
        dp = (2 * t - 30 * x ** 4
              - 2 * ((6 * x ** 2 + sum_b) * C - x * (2 * x ** 2 + sum_b) * dC) / C ** 2)
        return t_over_x - dp / 2 - p ** 2 / 4


def convexity_function_printed(n: int, x, coeffs: RecurrenceCoeffs):
    """The published closed form of F, evaluated term by term"""
    _require_convexity_regime(coeffs)
    ladder, below = freud6_ladder(n, coeffs), freud6_ladder(n - 1, coeffs)
    with coeffs.ctx.workprec():
        x = mp.mpf(x)
        t, b = ladder.t, ladder.betas[1]
        sum_b = b + ladder.betas[2]
        A_t, A_prev = 6 * ladder.C(x), 6 * below.C(x)
        dA = 6 * (4 * x ** 3 + 2 * x * sum_b)
        ddA = 6 * (12 * x ** 2 + 2 * sum_b)
        D = ladder.D(x)
        B_t = 6 * x * b * D + ladder.parity
        dB = 6 * b * D + 12 * x ** 2 * b
        dlog_w = -6 * x ** 5 + 2 * t * x
        w2_over_w = dlog_w ** 2 - 30 * x ** 4 + 2 * t
        return (b * A_prev * A_t - w2_over_w / 2 - B_t * (B_t - 6 * x ** 5 + 2 * t * x)
                + (6 * x ** 5 - 2 * t * x) / 4 - 3 * (dA / (2 * A_t)) ** 2 + dB
                - ((2 * B_t + 6 * x ** 5 - 2 * t * x) * dA - ddA) / (2 * A_t))


def sturm_convexity_profile(n: int, p: WeightParams, samples_per_gap: int = 64,
                            interval: Optional[Tuple] = None) -> ConvexityProfile:
    """
    Scan F over each window [x_k, x_{k+2}] of consecutive zeros of S_n and
    compare with the gaps: increasing F predicts x_{k+2}−x_{k+1} < x_{k+1}−x_k,
    decreasing F the reverse. Windows where F is not monotone are marked mixed.
    """
    _require_freud(p)
    coeffs = beta_freud6(p, n + 2)
    _require_convexity_regime(coeffs)
    zeros = zeros_S(n, coeffs)
    ctx = coeffs.ctx
    profile = ConvexityProfile(p.t, n)
    with ctx.workprec():
        lo_bound = mp.mpf(interval[0]) if interval else -mp.inf
        hi_bound = mp.mpf(interval[1]) if interval else mp.inf
        deviation = mp.zero
        for k in range(n - 2):
            x0, x1, x2 = zeros.zeros[k], zeros.zeros[k + 1], zeros.zeros[k + 2]
            if x0 < lo_bound or x2 > hi_bound:
                continue
            grid = []
            for a, b in ((x0, x1), (x1, x2)):
                grid.extend(a + (b - a) * j / samples_per_gap for j in range(samples_per_gap))
            grid.append(x2)
            values = [convexity_function(n, x, coeffs) for x in grid]
            steps = [b - a for a, b in zip(values, values[1:])]
            if all(s > 0 for s in steps):
                kind = "concave-zone"
            elif all(s < 0 for s in steps):
                kind = "convex-zone"
            else:
                kind = "mixed"
            gap_left, gap_right = x1 - x0, x2 - x1
            spread = 2 * (zeros.radii[k] + 2 * zeros.radii[k + 1] + zeros.radii[k + 2])
            holds: Optional[bool] = None
            if kind != "mixed" and abs(gap_right - gap_left) > spread:
                holds = gap_right < gap_left if kind == "concave-zone" else gap_right > gap_left
            profile.zones.append(ConvexityZone(k, x0, x2, kind, gap_left, gap_right, holds))
            f, fc = convexity_function(n, x1, coeffs), convexity_function_printed(n, x1, coeffs)
            deviation = max(deviation, abs(f - fc) / max(abs(f), mp.one))
        profile.printed_deviation = deviation
    return profile
