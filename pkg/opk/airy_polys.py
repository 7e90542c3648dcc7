"""
Monic generalised Airy polynomials P_n(x;t,λ): evaluation, ladder and ODE
coefficients, the mixed recurrence between λ and λ+2, zeros, and the zero
location results built on them.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from mpmath import mp

from .airy_moments import mu0_airy
from .airy_recurrence import coefficients_for
from .errors import DegenerateInput, DomainError, InvalidMeasure, PrecisionEscalation
from .models import Family, PrecisionContext, RecurrenceCoeffs, Residual, WeightParams, ZeroSet
from .numeric_core import SymTridiag, tridiag_eigs

logger = logging.getLogger(__name__)

SLACK_BITS = 40

# Golden-ratio conjugate; drives the low-discrepancy sample sequence
_PHI_INV = (5 ** 0.5 - 1) / 2


@dataclass(frozen=True)
class MonicPolynomial:
    """
    P_n in the monomial basis.

    Attributes:
        degree: n
        coefficients: c_0 … c_n (low to high), c_n = 1
        params: Weight the polynomial belongs to
    """
    degree: int
    coefficients: Tuple
    params: Optional[WeightParams] = None

    def __call__(self, x):
        """Horner evaluation"""
        value = mp.zero
        for c in reversed(self.coefficients):
            value = value * x + c
        return value


@dataclass(frozen=True)
class LadderCoeffs:
    """
    Ladder data for P_n' = β_nA_nP_{n−1} − B_nP_n with
    A_n(x) = x + α_n + R_n/x and B_n(x) = β_n + r_n/x.

    Attributes:
        R: β_n + β_{n+1} + α_n² − t
        r: (α_n + α_{n−1})β_n − n
        r_long: the longer expression for r_n, equal to r under the string equations
    """
    n: int
    alpha: object
    beta: object
    R: object
    r: object
    r_long: object

    def A(self, x):
        return x + self.alpha + self.R / x

    def B(self, x):
        return self.beta + self.r / x

    def dA(self, x):
        return 1 - self.R / x ** 2

    def dB(self, x):
        return -self.r / x ** 2


@dataclass(frozen=True)
class BoundData:
    """
    Christoffel data of the mixed recurrence between λ and λ+2.

    Attributes:
        d: P_n(0;λ)/P_{n−1}(0;λ) + P_{n−1}(0;λ+1)/P_{n−2}(0;λ+1)
        e: P_{n−1}(0;λ+1)/P_{n−2}(0;λ+1) · P_{n−1}(0;λ)/P_{n−2}(0;λ)
        g_zero: α_{n−1} + dβ_{n−1}/e, the zero of the linear factor G
    """
    n: int
    d: object
    e: object
    g_zero: object


@dataclass(frozen=True)
class BoundCheck:
    """Extreme-zero bound outcome; ``inconclusive`` when the co-primality test fails"""
    bound: object
    holds: bool
    inconclusive: bool = False


def _slack(coeffs: RecurrenceCoeffs):
    return mp.ldexp(coeffs.accuracy, SLACK_BITS)


def eval_P_sequence(n: int, x, coeffs: RecurrenceCoeffs) -> List:
    """[P_0(x), …, P_n(x)] by the three-term recurrence"""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    coeffs.require(max(n - 1, 0), "eval_P")
    with coeffs.ctx.workprec():
        values = [mp.one]
        prev = mp.zero
        for k in range(n):
            nxt = (x - coeffs.alpha(k)) * values[-1] - coeffs.beta(k) * prev
            prev = values[-1]
            values.append(nxt)
        return values


def eval_P(n: int, x, coeffs: RecurrenceCoeffs):
    """P_n(x) from P_{−1} = 0, P_0 = 1"""
    return eval_P_sequence(n, x, coeffs)[n]


def eval_P_derivs(n: int, x, coeffs: RecurrenceCoeffs) -> Tuple:
    """(P_n, P_n′, P_n″) at x by differentiating the recurrence"""
    coeffs.require(max(n - 1, 0), "eval_P_derivs")
    with coeffs.ctx.workprec():
        p0, p1 = mp.zero, mp.one
        d0, d1 = mp.zero, mp.zero
        s0, s1 = mp.zero, mp.zero
        for k in range(n):
            a, b = coeffs.alpha(k), coeffs.beta(k)
            p2 = (x - a) * p1 - b * p0
            d2 = p1 + (x - a) * d1 - b * d0
            s2 = 2 * d1 + (x - a) * s1 - b * s0
            p0, p1, d0, d1, s0, s1 = p1, p2, d1, d2, s1, s2
        return p1, d1, s1


def monic_polynomial(n: int, coeffs: RecurrenceCoeffs) -> MonicPolynomial:
    """Monomial coefficients of P_n, built by the recurrence on coefficient lists"""
    coeffs.require(max(n - 1, 0), "monic_polynomial")
    with coeffs.ctx.workprec():
        prev: List = []
        cur = [mp.one]
        for k in range(n):
            a, b = coeffs.alpha(k), coeffs.beta(k)
            nxt = [mp.zero] + cur  # x·P_k
            for i, c in enumerate(cur):
                nxt[i] -= a * c
            for i, c in enumerate(prev):
                nxt[i] -= b * c
            prev, cur = cur, nxt
        return MonicPolynomial(n, tuple(cur), coeffs.params)


def ladder_coeffs(n: int, coeffs: RecurrenceCoeffs) -> LadderCoeffs:
    """R_n, r_n and the long form of r_n for 0 ≤ n ≤ N−1"""
    if n < 0:
        raise DomainError("n must be nonnegative")
    coeffs.require(n + 1, "ladder_coeffs")
    with coeffs.ctx.workprec():
        t, lam = coeffs.params.t, coeffs.params.lam
        a, a_prev, a_next = coeffs.alpha(n), coeffs.alpha(n - 1), coeffs.alpha(n + 1)
        b, b_next = coeffs.beta(n), coeffs.beta(n + 1)
        R = b + b_next + a ** 2 - t
        r = (a + a_prev) * b - n
        r_long = (lam - a_next * b_next + a_prev * b - a ** 3 + t * a + 1) / 2 - a * b_next
        return LadderCoeffs(n, a, b, R, r, r_long)


def _require_nonzero_x(x):
    if x == 0:
        raise DomainError("A_n and B_n have a pole at x = 0")


def ladder_residual(n: int, x, coeffs: RecurrenceCoeffs) -> Residual:
    """P_n′(x) − β_nA_n(x)P_{n−1}(x) + B_n(x)P_n(x)"""
    if n < 1:
        raise DomainError("ladder residual needs n ≥ 1")
    with coeffs.ctx.workprec():
        x = mp.mpf(x)
        _require_nonzero_x(x)
        lad = ladder_coeffs(n, coeffs)
        values = eval_P_sequence(n, x, coeffs)
        _, dp, _ = eval_P_derivs(n, x, coeffs)
        terms = (dp, -lad.beta * lad.A(x) * values[n - 1], lad.B(x) * values[n])
        scale = max(max(abs(v) for v in terms),
                    abs(lad.beta * x * values[n - 1]), abs(lad.beta * values[n]))
        return Residual(mp.fsum(terms), _slack(coeffs) * scale, scale)


def supplementary_residuals(n: int, coeffs: RecurrenceCoeffs) -> Dict[str, Residual]:
    """
    Residuals of the four compatibility relations read off the x⁰ and x^(−1)
    coefficients of the ladder equations:

        eq1a  β_n + β_{n+1} = R_n − α_n² + t
        eq1b  r_n + r_{n+1} = −α_nR_n + λ
        eq3a  r_n (long form) = (α_n + α_{n−1})β_n − n
        eq3b  r_n² − λr_n = β_nR_nR_{n−1}
    """
    if n < 1:
        raise DomainError("supplementary relations need n ≥ 1")
    coeffs.require(n + 2, "supplementary_residuals")
    lad, lad_next, lad_prev = (ladder_coeffs(k, coeffs) for k in (n, n + 1, n - 1))
    slack = _slack(coeffs)
    with coeffs.ctx.workprec():
        t, lam = coeffs.params.t, coeffs.params.lam
        b, b_next = coeffs.beta(n), coeffs.beta(n + 1)

        def residual(terms):
            scale = max(max(abs(v) for v in terms), mp.one)
            return Residual(mp.fsum(terms), slack * scale, scale)

        return {
            "eq1a": residual((b, b_next, -lad.R, lad.alpha ** 2, -t)),
            "eq1b": residual((lad.r, lad_next.r, lad.alpha * lad.R, -lam)),
            "eq3a": residual((lad.r_long, n, -(lad.alpha + coeffs.alpha(n - 1)) * b)),
            "eq3b": residual((lad.r ** 2, -lam * lad.r, -b * lad.R * lad_prev.R)),
        }


def curly_C(n: int, x, coeffs: RecurrenceCoeffs):
    """𝒞_n(x) = x² + β_n + β_{n+1} + α_n(α_n + x) − t, i.e. xA_n(x)"""
    a = coeffs.alpha(n)
    return x ** 2 + coeffs.beta(n) + coeffs.beta(n + 1) + a * (a + x) - coeffs.params.t


def ode_singular_points(n: int, coeffs: RecurrenceCoeffs) -> List:
    """Positive real zeros of 𝒞_n, where the ODE coefficients have removable poles"""
    with coeffs.ctx.workprec():
        lad = ladder_coeffs(n, coeffs)
        disc = lad.alpha ** 2 - 4 * lad.R
        if disc < 0:
            return []
        roots = [(-lad.alpha - mp.sqrt(disc)) / 2, (-lad.alpha + mp.sqrt(disc)) / 2]
        return [r for r in roots if r > 0]


def _near_singular(x, singular: Sequence, ctx: PrecisionContext) -> bool:
    width = ctx.tiny(ctx.bits * 3 // 4) * max(abs(x), mp.one)
    return any(abs(x - s) <= width for s in singular)


def ode_residual_airy(n: int, x, coeffs: RecurrenceCoeffs) -> Residual:
    """
    P_n″ + 𝒬_nP_n′ + 𝒯_nP_n with

        𝒬_n = (λ + tx − x³ + 1)/x − (α_n + 2x)/𝒞_n
        𝒯_n = [n − (α_{n−1}+α_n)β_n − K(−λ + K − tx + x³) + β_n𝒞_{n−1}𝒞_n]/x²
              − K(x² − α_n² − β_n − β_{n+1} + t)/(x²𝒞_n),   K = β_n𝒟_n − n,
        𝒟_n = α_{n−1} + α_n + x

    Points where 𝒞_n vanishes are returned as skipped residuals.
    """
    if n < 1:
        raise DomainError("ODE residual needs n ≥ 1")
    coeffs.require(n + 1, "ode_residual_airy")
    ctx = coeffs.ctx
    with ctx.workprec():
        x = mp.mpf(x)
        _require_nonzero_x(x)
        t, lam = coeffs.params.t, coeffs.params.lam
        a, a_prev = coeffs.alpha(n), coeffs.alpha(n - 1)
        b, b_next = coeffs.beta(n), coeffs.beta(n + 1)
        C, C_prev = curly_C(n, x, coeffs), curly_C(n - 1, x, coeffs)
        if C == 0 or _near_singular(x, ode_singular_points(n, coeffs), ctx):
            logger.info("𝒞_%d vanishes near x=%s; sample skipped", n, mp.nstr(x, 8))
            return Residual(mp.zero, mp.zero, skipped=True, note="𝒞_n(x) = 0")
        D = a_prev + a + x
        K = b * D - n
        p, dp, ddp = eval_P_derivs(n, x, coeffs)
        q_parts = ((lam + t * x - x ** 3 + 1) / x, -(a + 2 * x) / C)
        t_parts = (
            (n - (a_prev + a) * b) / x ** 2,
            -K * (-lam + K - t * x + x ** 3) / x ** 2,
            b * C_prev * C / x ** 2,
            -K * (x ** 2 - a ** 2 - b - b_next + t) / (x ** 2 * C),
        )
        terms = (ddp, mp.fsum(q_parts) * dp, mp.fsum(t_parts) * p)
        scale = max(abs(ddp), max(abs(q * dp) for q in q_parts), max(abs(s * p) for s in t_parts))
        return Residual(mp.fsum(terms), _slack(coeffs) * scale, scale)


def ode_residual_airy_generic(n: int, x, coeffs: RecurrenceCoeffs) -> Residual:
    """
    The same ODE residual with coefficients assembled from the ladder
    functions: 𝒬 = −v′ − A_n′/A_n and 𝒯 = B_n′ − B_nA_n′/A_n − B_n(v′ + B_n)
    + β_nA_{n−1}A_n, v = x³/3 − tx − λ ln x.
    """
    if n < 1:
        raise DomainError("ODE residual needs n ≥ 1")
    coeffs.require(n + 1, "ode_residual_airy_generic")
    with coeffs.ctx.workprec():
        x = mp.mpf(x)
        _require_nonzero_x(x)
        t, lam = coeffs.params.t, coeffs.params.lam
        lad, lad_prev = ladder_coeffs(n, coeffs), ladder_coeffs(n - 1, coeffs)
        A, B = lad.A(x), lad.B(x)
        if A == 0:
            return Residual(mp.zero, mp.zero, skipped=True, note="A_n(x) = 0")
        dv = x ** 2 - t - lam / x
        log_dA = lad.dA(x) / A
        Q = -dv - log_dA
        t_parts = (lad.dB(x), -B * log_dA, -B * (dv + B), lad.beta * lad_prev.A(x) * A)
        p, dp, ddp = eval_P_derivs(n, x, coeffs)
        terms = (ddp, Q * dp, mp.fsum(t_parts) * p)
        scale = max(abs(ddp), abs(dv * dp), abs(log_dA * dp), max(abs(s * p) for s in t_parts))
        return Residual(mp.fsum(terms), _slack(coeffs) * scale, scale)


def _ratio_at_zero(k: int, coeffs: RecurrenceCoeffs):
    """P_k(0)/P_{k−1}(0), guarding the denominator"""
    values = eval_P_sequence(k, mp.zero, coeffs)
    if values[k - 1] == 0:
        raise DegenerateInput(f"P_{k - 1}(0) vanishes for {coeffs.params.label()}")
    return values[k] / values[k - 1]


def bound_data(n: int, p: WeightParams, coeffs: Optional[RecurrenceCoeffs] = None,
               shifted: Optional[RecurrenceCoeffs] = None) -> BoundData:
    """d_n, e_n and the G-zero for the mixed recurrence at degree n ≥ 2"""
    if n < 2:
        raise DomainError("mixed recurrence needs n ≥ 2")
    coeffs = coeffs or coefficients_for(p, n)
    shifted = shifted or coefficients_for(p.shifted(1), n)
    with p.ctx.workprec():
        c_n = _ratio_at_zero(n, coeffs)
        c_shift = _ratio_at_zero(n - 1, shifted)
        c_prev = _ratio_at_zero(n - 1, coeffs)
        d = c_n + c_shift
        e = c_shift * c_prev
        if e == 0:
            raise DegenerateInput(f"e_{n} vanishes for {p.label()}")
        g_zero = coeffs.alpha(n - 1) + d * coeffs.beta(n - 1) / e
        return BoundData(n, d, e, g_zero)


def mixed_recurrence_residual(n: int, x, p: WeightParams) -> Residual:
    """
    x²P_{n−2}(x;λ+2) − [(e_n/β_{n−1})(x − α_{n−1}) − d_n]P_{n−1}(x;λ)
    − (1 − e_n/β_{n−1})P_n(x;λ)
    """
    coeffs = coefficients_for(p, n)
    shifted = coefficients_for(p.shifted(1), n)
    doubled = coefficients_for(p.shifted(2), n)
    data = bound_data(n, p, coeffs, shifted)
    with p.ctx.workprec():
        x = mp.mpf(x)
        values = eval_P_sequence(n, x, coeffs)
        lhs = x ** 2 * eval_P(n - 2, x, doubled)
        ratio = data.e / coeffs.beta(n - 1)
        g = ratio * (x - coeffs.alpha(n - 1)) - data.d
        terms = (lhs, -g * values[n - 1], -(1 - ratio) * values[n])
        scale = max(max(abs(v) for v in terms), abs(data.d * values[n - 1]),
                    abs(ratio * x * values[n - 1]))
        accuracy = max(c.accuracy for c in (coeffs, shifted, doubled))
        return Residual(mp.fsum(terms), mp.ldexp(accuracy, SLACK_BITS) * scale, scale)


def zeros_P(n: int, coeffs: RecurrenceCoeffs) -> ZeroSet:
    """
    Zeros of P_n as eigenvalues of the Jacobi matrix (diagonal α_0…α_{n−1},
    off-diagonal √β_1…√β_{n−1}).

    Raises:
        InvalidMeasure: β not positive, or a zero enclosure reaches x ≤ 0
    """
    if n < 1:
        return ZeroSet(n, (), (), coeffs.params)
    coeffs.require(n - 1, "zeros_P")
    try:
        jacobi = SymTridiag.jacobi(coeffs.alphas, coeffs.betas, n)
    except DomainError as exc:
        raise InvalidMeasure(str(exc)) from exc
    spectrum = tridiag_eigs(jacobi, coeffs.ctx)
    zeros = ZeroSet(n, spectrum.values, spectrum.radii, coeffs.params)
    if zeros.lo(0) <= 0:
        raise InvalidMeasure(f"P_{n} has a zero at or left of the origin for {coeffs.params.label()}")
    return zeros


def interlaces(inner: ZeroSet, outer: ZeroSet) -> bool:
    """Strict interlacing of len(outer)−1 zeros inside len(outer), by disjoint enclosures"""
    if len(inner) != len(outer) - 1:
        raise DomainError("interlacing compares degrees n−1 and n")
    for i in range(len(inner)):
        if not (outer.hi(i) < inner.lo(i) and inner.hi(i) < outer.lo(i + 1)):
            return False
    return True


def zero_bound_check(n: int, p: WeightParams) -> BoundCheck:
    """
    The G-zero α_{n−1} + d_nβ_{n−1}/e_n lies strictly between the smallest
    and the largest zero of P_n, provided P_n(·;λ) and P_{n−2}(·;λ+2) share
    no zero.
    """
    coeffs = coefficients_for(p, n)
    data = bound_data(n, p, coeffs)
    zeros = zeros_P(n, coeffs)
    lifted = zeros_P(n - 2, coefficients_for(p.shifted(2), n))
    with p.ctx.workprec():
        for z, r in zip(lifted.zeros, lifted.radii):
            for i in range(len(zeros)):
                if abs(z - zeros.zeros[i]) <= r + zeros.radii[i]:
                    logger.info("P_%d and the λ+2 family share a zero enclosure for %s",
                                n, p.label())
                    return BoundCheck(data.g_zero, False, inconclusive=True)
        holds = zeros.hi(0) < data.g_zero < zeros.lo(n - 1)
        return BoundCheck(data.g_zero, holds)


def nth_zero(zeros: ZeroSet, nu: int) -> Tuple:
    """x_{ν,n} (ν = 1 is the largest) with its radius"""
    i = zeros.n - nu
    return zeros.zeros[i], zeros.radii[i]


def strictly_increasing(points: List[Tuple]) -> bool:
    """True if the (value, radius) enclosures increase along the list"""
    for (x, rx), (y, ry) in zip(points, points[1:]):
        if abs(y - x) <= rx + ry:
            raise PrecisionEscalation("zero enclosures overlap along the grid")
        if y < x:
            return False
    return True


def zero_monotonicity_report(n: int, t_values: Sequence, lambdas: Sequence,
                             ctx: PrecisionContext) -> List[Dict]:
    """
    Check that every zero x_{ν,n} increases along the t grid (for each λ) and
    along the λ grid (for each t).

    Raises:
        PrecisionEscalation: neighbouring enclosures overlap
    """
    ts = [ctx.mpf(t) for t in t_values]
    ls = [ctx.mpf(l) for l in lambdas]
    if any(b <= a for a, b in zip(ts, ts[1:])) or any(b <= a for a, b in zip(ls, ls[1:])):
        raise DomainError("monotonicity grids must be strictly increasing")
    zero_sets = {
        (t, l): zeros_P(n, coefficients_for(WeightParams(t, l, Family.AIRY, ctx), n))
        for t in ts for l in ls
    }
    report = []
    for nu in range(1, n + 1):
        for l in ls:
            line = [nth_zero(zero_sets[(t, l)], nu) for t in ts]
            report.append({"axis": "t", "fixed": l, "nu": nu, "holds": strictly_increasing(line)})
        for t in ts:
            line = [nth_zero(zero_sets[(t, l)], nu) for l in ls]
            report.append({"axis": "lambda", "fixed": t, "nu": nu, "holds": strictly_increasing(line)})
    return report


def gauss_rule(n: int, coeffs: RecurrenceCoeffs, mu0=None) -> Tuple[Tuple, Tuple]:
    """
    n-point Gauss rule of the weight: nodes are the zeros of P_n, weights the
    Christoffel numbers 1/Σ_{j<n} P_j(x_k)²/h_j with h_j = μ_0β_1⋯β_j.
    """
    zeros = zeros_P(n, coeffs)
    if mu0 is None:
        mu0 = mu0_airy(coeffs.params)
    return christoffel_weights(zeros, coeffs, mu0, eval_P_sequence)


def christoffel_weights(zeros: ZeroSet, coeffs: RecurrenceCoeffs, mu0, sequence) -> Tuple[Tuple, Tuple]:
    """Nodes and Christoffel weights from zeros and a P_0…P_{n−1} evaluator"""
    n = zeros.n
    with coeffs.ctx.workprec():
        norms = [mp.mpf(mu0)]
        for j in range(1, n):
            norms.append(norms[-1] * coeffs.beta(j))
        weights = []
        for x in zeros.zeros:
            values = sequence(n - 1, x, coeffs)
            weights.append(1 / mp.fsum(values[j] ** 2 / norms[j] for j in range(n)))
        return tuple(zeros.zeros), tuple(weights)


def sample_points(count: int, upper, ctx: PrecisionContext, lower=0) -> List:
    """
    Low-discrepancy points in (lower, upper]: the golden-ratio sequence,
    shifted off the left endpoint.
    """
    with ctx.workprec():
        upper, lower = mp.mpf(upper), mp.mpf(lower)
        points = []
        for i in range(1, count + 1):
            frac = mp.frac(i * mp.mpf(_PHI_INV))
            points.append(lower + (upper - lower) * (1 - frac))
        return points
