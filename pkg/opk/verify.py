"""
Verification suites behind ``opk verify``

Every identity, expansion and zero property is checked on a (t, λ) grid and
turned into CheckRecords. Library errors inside a check become fail records.
"""
import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import mpmath
from mpmath import mp

from .airy_moments import moment_ode_residual, moment_quadrature, mu0_airy, mu0_airy_halfint, mu_k_airy
from .airy_polys import (
    gauss_rule,
    interlaces,
    ladder_residual,
    mixed_recurrence_residual,
    ode_residual_airy,
    ode_residual_airy_generic,
    sample_points,
    supplementary_residuals,
    zero_bound_check,
    zero_monotonicity_report,
    zeros_P,
)
from .airy_recurrence import (
    alpha0_asymptotic,
    alpha_logderiv_check,
    asympt_large_n,
    asympt_large_t,
    coefficients_for,
    conjecture_report,
    diff_system_residual,
    empirical_order,
    recurrence_from_moments,
    recurrence_from_string_equations,
    string_system_residual,
    toda_equation_residual,
    toda_system_residual,
    wang_discrete_residual,
    wang_system_residual,
)
from .errors import OpkError
from .freud6 import (
    ADOPTED_READING,
    adjudicate_bracket,
    beta_freud6,
    betas_from_moments,
    consecutive_interlacing,
    gauss_rule_S,
    interlacing_check,
    ladder_residual_freud6,
    mixed_recurrence_freud6,
    moment_quadrature_freud6,
    mu_freud6,
    ode_residual_freud6,
    ode_residual_freud6_generic,
    sturm_convexity_profile,
    symmetric_chain_check,
    zero_monotonicity_report_freud6,
    zero_upper_bound_freud6,
    zeros_S,
)
from .models import (
    CheckRecord,
    CheckStatus,
    Family,
    PrecisionContext,
    Residual,
    RunConfig,
    VerificationReport,
    WeightParams,
)
from .storage import format_real
from .workers import run_cells

logger = logging.getLogger(__name__)

DEFAULT_GRIDS = {
    Family.AIRY: (("-8", "-3", "0", "3", "8"), ("-0.5", "0", "0.5", "2")),
    Family.FREUD6: (("-3", "0", "3"), ("-0.5", "0", "1")),
}

RECORD_DIGITS = 6
MOMENT_ORDERS = 12
SAMPLES = 6
INTERLACING_KS = ("0.25", "0.5", "0.75")

# Largest n for the expensive suites
DERIVATIVE_N_CAP = 8
ZERO_N_CAP = 15
CHAIN_N_CAP = 12
GAUSS_N_CAP = 6
MONOTONICITY_N_CAP = 6

ANCHORS = {
    "moment-closed-form": "1F2 closed form against the defining integral",
    "airy-function-form": "λ = −½ moment through Ai² + Bi²",
    "moment-ode": "third-order ODE satisfied by μ0 in t",
    "alpha-logderiv": "α_n as t-derivative of ln(Δ_{n+1}/Δ_n)",
    "toda-equation": "Toda equation for ln Δ_n",
    "toda-alpha": "Toda system, α_n′",
    "toda-beta": "Toda system, β_n′",
    "diff-alpha": "second-order differential system, α_n equation",
    "diff-beta": "second-order differential system, β_n equation",
    "string-first": "discrete string equations, first",
    "string-second": "discrete string equations, second",
    "wang-refuted": "previously proposed differential system does not hold",
    "wang-discrete-refuted": "discrete companion of the refuted system does not hold",
    "asympt-n-alpha": "large-n expansion of α_n",
    "asympt-n-order": "decay order of the large-n error",
    "asympt-t-decay": "large-|t| expansion error shrinks with |t|",
    "asympt-t-order": "decay order of the large-|t| error",
    "alpha0-asymptotic": "three-term α_0 expansion",
    "ladder": "ladder relation P_n′ = β_nA_nP_{n−1} − B_nP_n",
    "supplementary-eq1a": "compatibility: β_n + β_{n+1} = R_n − α_n² + t",
    "supplementary-eq1b": "compatibility: r_n + r_{n+1} = −α_nR_n + λ",
    "supplementary-eq3a": "compatibility: long form of r_n",
    "supplementary-eq3b": "compatibility: r_n² − λr_n = β_nR_nR_{n−1}",
    "ode": "second-order ODE in x, closed-form coefficients",
    "ode-generic": "second-order ODE in x, ladder-assembled coefficients",
    "mixed-recurrence": "mixed recurrence between λ and λ+2",
    "interlacing": "zeros of P_{n−1} interlace zeros of P_n",
    "gauss-exactness": "Gauss rule reproduces μ_0 … μ_{2n−1}",
    "zero-bound": "G-zero lies between the extreme zeros",
    "zero-monotonicity": "zeros increase in t and in λ",
    "conjecture": "grid observation on the coefficient conjecture",
    "freud-odd-moment": "odd moments of the symmetric weight vanish",
    "freud-moment": "mapped Airy moments against the defining integral",
    "freud-symmetrisation": "β_n from mapped moments against quadrature moments",
    "freud-ladder": "xS_n′ = 𝒜_nS_{n−1} − ℬ_nS_n with the parity term",
    "freud-ladder-uncorrected": "ℬ_n without the parity term fails for odd n",
    "freud-ode": "xS_n″ + Q_nS_n′ + T_nS_n = 0, closed-form coefficients",
    "freud-ode-generic": "xS_n″ + Q_nS_n′ + T_nS_n = 0, ladder-assembled coefficients",
    "bracket-adjudication": "parity bracket of T_n decided by the ODE residual",
    "freud-mixed-recurrence": "x²S_n(λ+1) = xS_{n+1}(λ) − (β_{n+1}+a_n)S_n(λ)",
    "freud-symmetry": "zeros of S_n are symmetric about 0",
    "freud-interlacing": "zeros of S_{n−1} interlace zeros of S_n",
    "freud-gauss-exactness": "Gauss rule reproduces μ_0 … μ_{2n−1}",
    "interlacing-chain": "chain among S_n(λ), S_{n−1}(λ), S_{n−1}(λ+k), S_{n−1}(λ+1)",
    "symmetric-chain": "the chain over the whole real line",
    "freud-bound": "x_{1,n} < max √(c_nβ_k)",
    "freud-zero-monotonicity": "positive zeros increase in t and in λ",
    "convexity": "Sturm comparison of F with consecutive zero gaps",
    "convexity-printed": "published closed form of F against the normal form",
}


@dataclass(frozen=True)
class VerifyCell:
    """
    One unit of verification work.

    A point cell carries one (t, λ); a grid cell carries the whole grid for
    the suites that compare across grid points.
    """
    family: str
    suite: str
    t_values: Tuple[str, ...]
    lambdas: Tuple[str, ...]
    n_lo: int
    n_hi: int
    bits: int
    levels: int = 4

    @property
    def ctx(self) -> PrecisionContext:
        return PrecisionContext(self.bits)

    @property
    def params(self) -> WeightParams:
        return WeightParams(self.t_values[0], self.lambdas[0], Family(self.family), self.ctx)

    def ns(self, lowest: int = 0, cap: Optional[int] = None) -> range:
        hi = self.n_hi if cap is None else min(self.n_hi, cap)
        return range(max(self.n_lo, lowest), hi + 1)


class Recorder:
    """Collects the CheckRecords of one cell"""

    def __init__(self, cell: VerifyCell, t: str = "*", lam: str = "*"):
        self.cell = cell
        self.t = t
        self.lam = lam
        self.records: List[CheckRecord] = []

    def add(self, identity: str, n: int, status: CheckStatus, residual: str = "",
            tolerance: str = "", note: str = "", t: Optional[str] = None, lam: Optional[str] = None):
        self.records.append(CheckRecord(
            suite=self.cell.suite,
            identity=identity,
            anchor=ANCHORS.get(identity, ""),
            family=self.cell.family,
            n=n,
            t=self.t if t is None else t,
            lam=self.lam if lam is None else lam,
            residual=residual,
            tolerance=tolerance,
            status=status.value,
            note=note,
        ))

    def residual(self, identity: str, n: int, res: Residual, note: str = ""):
        if res.skipped:
            self.add(identity, n, CheckStatus.SKIP, note=res.note or note)
            return
        with mp.workprec(64):
            tolerance = res.tolerance / abs(res.scale) if res.scale else res.tolerance
        status = CheckStatus.PASS if res.holds else CheckStatus.FAIL
        self.add(identity, n, status, _fmt(res.relative), _fmt(tolerance), note or res.note)

    def outcome(self, identity: str, n: int, holds: Optional[bool], note: str = "",
                measured=None, tolerance=None, **where):
        if holds is None:
            status = CheckStatus.SKIP
        else:
            status = CheckStatus.PASS if holds else CheckStatus.FAIL
        self.add(identity, n, status, _fmt(measured), _fmt(tolerance), note, **where)

    def report(self, identity: str, n: int, note: str, measured=None, **where):
        self.add(identity, n, CheckStatus.REPORT, _fmt(measured), "", note, **where)

    @contextmanager
    def guard(self, identity: str, n: int = -1, **where):
        """Turn an OpkError raised inside the block into a fail record"""
        try:
            yield
        except OpkError as exc:
            logger.info("%s n=%d: %s", identity, n, exc)
            self.add(identity, n, CheckStatus.FAIL, note=f"{type(exc).__name__}: {exc}", **where)


def _fmt(value) -> str:
    if value is None:
        return ""
    return format_real(value, RECORD_DIGITS)


def _relative(value, reference, tolerance) -> Residual:
    scale = abs(reference) if reference else mp.one
    return Residual(value, tolerance * scale, scale)


def _loose(ctx: PrecisionContext):
    """Relative tolerance for comparisons between two independent routes"""
    return ctx.tiny(ctx.bits * 3 // 8)


def _airy_samples(n: int, p: WeightParams) -> List:
    with p.ctx.workprec():
        upper = 2 + mp.sqrt(abs(p.t)) + 2 * mp.cbrt(n)
    return sample_points(SAMPLES, upper, p.ctx)


def _freud_samples(n: int, p: WeightParams) -> List:
    with p.ctx.workprec():
        upper = mp.mpf(3) / 2 + mp.root(abs(p.t) + 1, 4) + mp.root(n, 6)
    return sample_points(SAMPLES, upper, p.ctx, lower=-upper)


def _gauss_deviation(nodes: Sequence, weights: Sequence, moments: Sequence, ctx: PrecisionContext):
    with ctx.workprec():
        worst = mp.zero
        for k, mu in enumerate(moments):
            quad = mp.fsum(w * x ** k for x, w in zip(nodes, weights))
            worst = max(worst, abs(quad - mu) / max(abs(mu), mp.one))
        return worst


# ---- generalised Airy, per grid point ---------------------------------------

def suite_moments(cell: VerifyCell, rec: Recorder):
    p = cell.params
    tol = _loose(p.ctx)
    for k in range(MOMENT_ORDERS + 1):
        with rec.guard("moment-closed-form", k):
            closed = mu_k_airy(p, k)
            quad = moment_quadrature(p, k)
            with p.ctx.workprec():
                rec.residual("moment-closed-form", k, _relative(closed - quad, closed, tol))


def suite_airy_identity(cell: VerifyCell, rec: Recorder):
    p = cell.params
    if p.lam != -mp.mpf(1) / 2:
        rec.add("airy-function-form", 0, CheckStatus.SKIP, note="needs λ = −0.5")
        return
    with rec.guard("airy-function-form", 0):
        closed = mu0_airy(p)
        special = mu0_airy_halfint(p.t, p.ctx)
        with p.ctx.workprec():
            rec.residual("airy-function-form", 0, _relative(closed - special, closed, _loose(p.ctx)))


def suite_moment_ode(cell: VerifyCell, rec: Recorder):
    with rec.guard("moment-ode", 0):
        rec.residual("moment-ode", 0, moment_ode_residual(cell.params))


def suite_logderiv(cell: VerifyCell, rec: Recorder):
    p = cell.params
    for n in cell.ns(0):
        with rec.guard("alpha-logderiv", n):
            rec.residual("alpha-logderiv", n, alpha_logderiv_check(n, p))


def suite_toda_eq(cell: VerifyCell, rec: Recorder):
    p = cell.params
    for n in cell.ns(1):
        with rec.guard("toda-equation", n):
            rec.residual("toda-equation", n, toda_equation_residual(n, p))


def suite_toda_sys(cell: VerifyCell, rec: Recorder):
    p = cell.params
    for n in cell.ns(0, DERIVATIVE_N_CAP):
        with rec.guard("toda-alpha", n):
            first, second = toda_system_residual(n, p, levels=cell.levels)
            rec.residual("toda-alpha", n, first)
            rec.residual("toda-beta", n, second)


def suite_diff_sys(cell: VerifyCell, rec: Recorder):
    p = cell.params
    for n in cell.ns(0, DERIVATIVE_N_CAP):
        with rec.guard("diff-alpha", n):
            first, second = diff_system_residual(n, p, levels=cell.levels)
            rec.residual("diff-alpha", n, first)
            rec.residual("diff-beta", n, second)


def _prepare(rec: Recorder, identity: str, build: Callable, *args):
    """Shared input of a suite's index loop; None, with a fail record, when it cannot be built"""
    with rec.guard(identity):
        return build(*args)
    return None


def suite_string(cell: VerifyCell, rec: Recorder):
    p = cell.params
    coeffs = _prepare(rec, "string-first", coefficients_for, p, cell.n_hi + 1)
    if coeffs is None:
        return
    for n in cell.ns(0):
        with rec.guard("string-first", n):
            first, second = string_system_residual(n, p, coeffs)
            rec.residual("string-first", n, first)
            rec.residual("string-second", n, second)


def suite_wang(cell: VerifyCell, rec: Recorder):
    p = cell.params
    coeffs = _prepare(rec, "wang-refuted", coefficients_for, p, cell.n_hi + 1)
    if coeffs is None:
        return
    for n in cell.ns(1):
        for identity, fn in (("wang-refuted", wang_system_residual),
                             ("wang-discrete-refuted", wang_discrete_residual)):
            with rec.guard(identity, n):
                first, second = fn(n, p, coeffs)
                refuted = not (first.holds and second.holds)
                with mp.workprec(64):
                    biggest = max(first.relative, second.relative)
                rec.outcome(identity, n, refuted, note="residuals stay away from 0" if refuted
                            else "both residuals vanish", measured=biggest)


ASYMPT_N_SMALL, ASYMPT_N_LARGE = 64, 256


def suite_asympt_n(cell: VerifyCell, rec: Recorder):
    p = cell.params
    with rec.guard("asympt-n-alpha", ASYMPT_N_LARGE):
        coeffs = recurrence_from_string_equations(p, ASYMPT_N_LARGE)
        errors, expansions = {}, {}
        for n in (ASYMPT_N_SMALL, ASYMPT_N_LARGE):
            alpha, beta = asympt_large_n(n, p)
            expansions[n] = alpha
            with p.ctx.workprec():
                errors[n] = (abs(coeffs.alpha(n) - alpha), abs(coeffs.beta(n) - beta))
        with p.ctx.workprec():
            # three times the n^(−1) scale of the first omitted term
            limit = mp.mpf(3) / ASYMPT_N_LARGE
            err_alpha = errors[ASYMPT_N_LARGE][0] / abs(expansions[ASYMPT_N_LARGE])
            rec.outcome("asympt-n-alpha", ASYMPT_N_LARGE, err_alpha <= limit,
                        note="relative error", measured=err_alpha, tolerance=limit)
            ratio = ASYMPT_N_LARGE // ASYMPT_N_SMALL
            for which, idx in (("alpha", 0), ("beta", 1)):
                order = empirical_order(errors[ASYMPT_N_SMALL][idx], errors[ASYMPT_N_LARGE][idx], ratio)
                rec.outcome("asympt-n-order", ASYMPT_N_LARGE, order >= mp.mpf(0.7),
                            note=f"{which}: measured order {mp.nstr(order, 4)}", measured=order)


# ---- generalised Airy polynomials ---------------------------------------------

def suite_ladder(cell: VerifyCell, rec: Recorder):
    p = cell.params
    coeffs = _prepare(rec, "ladder", coefficients_for, p, cell.n_hi + 1)
    if coeffs is None:
        return
    for n in cell.ns(1):
        with rec.guard("ladder", n):
            for x in _airy_samples(n, p):
                rec.residual("ladder", n, ladder_residual(n, x, coeffs))


def suite_supplementary(cell: VerifyCell, rec: Recorder):
    p = cell.params
    coeffs = _prepare(rec, "supplementary-eq1a", coefficients_for, p, cell.n_hi + 2)
    if coeffs is None:
        return
    for n in cell.ns(1):
        with rec.guard("supplementary-eq1a", n):
            for name, res in sorted(supplementary_residuals(n, coeffs).items()):
                rec.residual(f"supplementary-{name}", n, res)


def suite_ode(cell: VerifyCell, rec: Recorder):
    p = cell.params
    coeffs = _prepare(rec, "ode", coefficients_for, p, cell.n_hi + 1)
    if coeffs is None:
        return
    for n in cell.ns(1):
        with rec.guard("ode", n):
            for x in _airy_samples(n, p):
                rec.residual("ode", n, ode_residual_airy(n, x, coeffs))
                rec.residual("ode-generic", n, ode_residual_airy_generic(n, x, coeffs))


def suite_mixed(cell: VerifyCell, rec: Recorder):
    p = cell.params
    for n in cell.ns(2):
        with rec.guard("mixed-recurrence", n):
            for x in _airy_samples(n, p):
                rec.residual("mixed-recurrence", n, mixed_recurrence_residual(n, x, p))


def suite_zeros(cell: VerifyCell, rec: Recorder):
    p = cell.params
    coeffs = _prepare(rec, "interlacing", coefficients_for, p, min(cell.n_hi, ZERO_N_CAP))
    if coeffs is None:
        return
    for n in cell.ns(2, ZERO_N_CAP):
        with rec.guard("interlacing", n):
            rec.outcome("interlacing", n, interlaces(zeros_P(n - 1, coeffs), zeros_P(n, coeffs)))
    for n in cell.ns(1, GAUSS_N_CAP):
        with rec.guard("gauss-exactness", n):
            nodes, weights = gauss_rule(n, coeffs)
            moments = [mu_k_airy(p, k) for k in range(2 * n)]
            deviation = _gauss_deviation(nodes, weights, moments, coeffs.ctx)
            tol = _loose(coeffs.ctx)
            rec.outcome("gauss-exactness", n, deviation <= tol, measured=deviation, tolerance=tol)


def suite_bound(cell: VerifyCell, rec: Recorder):
    p = cell.params
    for n in cell.ns(2):
        with rec.guard("zero-bound", n):
            check = zero_bound_check(n, p)
            if check.inconclusive:
                rec.add("zero-bound", n, CheckStatus.SKIP, note="P_n and P_{n−2}(λ+2) share a zero")
            else:
                rec.outcome("zero-bound", n, check.holds, measured=check.bound)


# ---- grid-wide suites -------------------------------------------------------------

def _sorted_values(values: Sequence[str], ctx: PrecisionContext) -> List[str]:
    unique = {ctx.mpf(v): v for v in values}
    return [unique[k] for k in sorted(unique)]


# (coefficient, end of the t axis) → (predicted decay order, accepted deviation)
# The β expansion at +∞ keeps a t^(−1/2) relative correction at |t| = 25, so its
# measured order is judged with the wider window.
ASYMPT_T_ORDERS = {
    ("alpha", 1): (mp.mpf(5) / 2, mp.mpf("0.3")),
    ("alpha", -1): (mp.mpf(7), mp.mpf("0.3")),
    ("beta", 1): (mp.mpf(7) / 2, mp.mpf("1.2")),
    ("beta", -1): (mp.mpf(8), mp.mpf("0.3")),
}


def suite_asympt_t(cell: VerifyCell, rec: Recorder):
    ctx = cell.ctx
    for lam in _sorted_values(cell.lambdas, ctx):
        for sign in (1, -1):
            where = {"t": "+inf" if sign > 0 else "-inf", "lam": lam}
            for n in range(0, 4):
                with rec.guard("asympt-t-decay", n, **where):
                    errors = []
                    for magnitude in (25, 50):
                        p = WeightParams(sign * magnitude, lam, Family.AIRY, ctx)
                        coeffs = recurrence_from_moments(p, max(n, 1))
                        alpha, beta = asympt_large_t(n, p, sign)
                        with ctx.workprec():
                            errors.append((abs(coeffs.alpha(n) - alpha), abs(coeffs.beta(n) - beta)))
                    with ctx.workprec():
                        rec.outcome("asympt-t-decay", n, errors[1][0] < errors[0][0],
                                    note="alpha", measured=errors[1][0], **where)
                        if n > 0:
                            rec.outcome("asympt-t-decay", n, errors[1][1] < errors[0][1],
                                        note="beta", measured=errors[1][1], **where)
                        for which, idx in (("alpha", 0), ("beta", 1)):
                            if which == "beta" and n == 0:
                                continue
                            predicted, window = ASYMPT_T_ORDERS[which, sign]
                            order = empirical_order(errors[0][idx], errors[1][idx])
                            rec.outcome("asympt-t-order", n, abs(order - predicted) <= window,
                                        note=f"{which}, predicted {mp.nstr(predicted, 3)}",
                                        measured=order, tolerance=window, **where)
            with rec.guard("alpha0-asymptotic", 0, **where):
                p = WeightParams(sign * 50, lam, Family.AIRY, ctx)
                alpha = recurrence_from_moments(p, 1).alpha(0)
                with ctx.workprec():
                    error = abs(alpha - alpha0_asymptotic(p.t, p.lam, ctx)) / abs(alpha)
                rec.report("alpha0-asymptotic", 0, "relative error at |t| = 50", measured=error, **where)


def suite_conjecture(cell: VerifyCell, rec: Recorder):
    ctx = cell.ctx
    ts = _sorted_values(cell.t_values, ctx)
    if len(ts) < 3:
        rec.add("conjecture", -1, CheckStatus.SKIP, note="needs at least three t values")
        return
    for lam in _sorted_values(cell.lambdas, ctx):
        with rec.guard("conjecture", -1, lam=lam):
            for item in conjecture_report(lam, ts, cell.n_hi, ctx):
                note = item["item"] + (" observed" if item["holds"] else " not observed")
                if item["note"]:
                    note += f" ({item['note']})"
                rec.report("conjecture", item["n"], note, lam=lam)


def _monotonicity(cell: VerifyCell, rec: Recorder, identity: str, report_fn: Callable):
    ctx = cell.ctx
    ts = _sorted_values(cell.t_values, ctx)
    ls = _sorted_values(cell.lambdas, ctx)
    if len(ts) < 2 and len(ls) < 2:
        rec.add(identity, -1, CheckStatus.SKIP, note="needs two grid values on some axis")
        return
    for n in cell.ns(1, MONOTONICITY_N_CAP):
        with rec.guard(identity, n):
            for entry in report_fn(n, ts, ls, ctx):
                where = ({"lam": mp.nstr(entry["fixed"], 8)} if entry["axis"] == "t"
                         else {"t": mp.nstr(entry["fixed"], 8)})
                rec.outcome(identity, n, entry["holds"],
                            note=f"ν={entry['nu']} along {entry['axis']}", **where)


def suite_monotonicity(cell: VerifyCell, rec: Recorder):
    _monotonicity(cell, rec, "zero-monotonicity", zero_monotonicity_report)


def suite_freud_monotonicity(cell: VerifyCell, rec: Recorder):
    _monotonicity(cell, rec, "freud-zero-monotonicity", zero_monotonicity_report_freud6)


# ---- sextic Freud -------------------------------------------------------------------

def suite_freud_moments(cell: VerifyCell, rec: Recorder):
    p = cell.params
    tol = _loose(p.ctx)
    for k in range(1, MOMENT_ORDERS, 2):
        with rec.guard("freud-odd-moment", k):
            rec.outcome("freud-odd-moment", k, mu_freud6(p, k) == 0)
    for k in range(0, MOMENT_ORDERS + 1, 2):
        with rec.guard("freud-moment", k):
            mapped = mu_freud6(p, k)
            quad = moment_quadrature_freud6(p, k)
            with p.ctx.workprec():
                rec.residual("freud-moment", k, _relative(mapped - quad, mapped, tol))
    N = min(cell.n_hi, GAUSS_N_CAP)
    with rec.guard("freud-symmetrisation", N):
        coeffs = beta_freud6(p, N)
        ctx = coeffs.ctx
        work = p.with_ctx(ctx)
        quad_moments = [moment_quadrature_freud6(work, k) for k in range(2 * N + 2)]
        betas = betas_from_moments(quad_moments, N, ctx)[0]
        with ctx.workprec():
            worst = max((abs(betas[n] - coeffs.beta(n)) / coeffs.beta(n) for n in range(1, N + 1)),
                        default=mp.zero)
            limit = mp.mpf(10) ** -(mp.mpf(0.28) * p.bits - 8)
            rec.outcome("freud-symmetrisation", N, worst <= limit, measured=worst, tolerance=limit)


def suite_freud_ladder(cell: VerifyCell, rec: Recorder):
    p = cell.params
    coeffs = _prepare(rec, "freud-ladder", beta_freud6, p, cell.n_hi + 2)
    if coeffs is None:
        return
    neutral = p.lam == -mp.mpf(1) / 2
    for n in cell.ns(1):
        with rec.guard("freud-ladder", n):
            for x in [mp.zero] + _freud_samples(n, p):
                rec.residual("freud-ladder", n, ladder_residual_freud6(n, x, coeffs))
                if n % 2 and not neutral and x != 0:
                    bare = ladder_residual_freud6(n, x, coeffs, parity_term=False)
                    rec.outcome("freud-ladder-uncorrected", n, not bare.holds,
                                note="odd n: must not vanish", measured=bare.relative)


def suite_freud_ode(cell: VerifyCell, rec: Recorder):
    p = cell.params
    coeffs = _prepare(rec, "freud-ode", beta_freud6, p, max(cell.n_hi, 6) + 2)
    if coeffs is None:
        return
    for n in cell.ns(1):
        with rec.guard("freud-ode", n):
            for x in _freud_samples(n, p):
                rec.residual("freud-ode", n, ode_residual_freud6(n, x, coeffs))
                rec.residual("freud-ode-generic", n, ode_residual_freud6_generic(n, x, coeffs))
    if p.lam == -mp.mpf(1) / 2:
        rec.add("bracket-adjudication", -1, CheckStatus.SKIP,
                note="all readings coincide at λ = −0.5")
        return
    with rec.guard("bracket-adjudication"):
        outcome = adjudicate_bracket(coeffs, range(2, 7), _freud_samples(4, p)[:3])
        consistent = ",".join(name for name, ok in outcome.items() if ok) or "none"
        holds = outcome[ADOPTED_READING] and sum(outcome.values()) == 1
        rec.outcome("bracket-adjudication", -1, holds,
                    note=f"consistent readings: {consistent}; adopted: {ADOPTED_READING}")


def suite_freud_mixed(cell: VerifyCell, rec: Recorder):
    p = cell.params
    for n in cell.ns(0):
        with rec.guard("freud-mixed-recurrence", n):
            for x in _freud_samples(n + 1, p):
                rec.residual("freud-mixed-recurrence", n, mixed_recurrence_freud6(n, x, p))


def suite_freud_zeros(cell: VerifyCell, rec: Recorder):
    p = cell.params
    coeffs = _prepare(rec, "freud-symmetry", beta_freud6, p, min(cell.n_hi, ZERO_N_CAP))
    if coeffs is None:
        return
    for n in cell.ns(1, ZERO_N_CAP):
        with rec.guard("freud-symmetry", n):
            zeros = zeros_S(n, coeffs)
            symmetric = all(
                abs(zeros.zeros[i] + zeros.zeros[n - 1 - i]) <= zeros.radii[i] + zeros.radii[n - 1 - i]
                for i in range(n)
            )
            rec.outcome("freud-symmetry", n, symmetric)
            if n >= 2:
                rec.outcome("freud-interlacing", n, consecutive_interlacing(n, coeffs))
    for n in cell.ns(1, GAUSS_N_CAP):
        with rec.guard("freud-gauss-exactness", n):
            nodes, weights = gauss_rule_S(n, coeffs)
            moments = [mu_freud6(p, k) for k in range(2 * n)]
            deviation = _gauss_deviation(nodes, weights, moments, coeffs.ctx)
            tol = _loose(coeffs.ctx)
            rec.outcome("freud-gauss-exactness", n, deviation <= tol, measured=deviation, tolerance=tol)


def suite_interlacing(cell: VerifyCell, rec: Recorder):
    p = cell.params
    for n in cell.ns(2, CHAIN_N_CAP):
        for k in INTERLACING_KS:
            with rec.guard("interlacing-chain", n):
                chain = interlacing_check(n, p, k)
                rec.outcome("interlacing-chain", n, chain.holds, note=f"k={k} {chain.note}".strip())
            with rec.guard("symmetric-chain", n):
                chain = symmetric_chain_check(n, p, k)
                rec.outcome("symmetric-chain", n, chain.holds, note=f"k={k} {chain.note}".strip())


def suite_freud_bound(cell: VerifyCell, rec: Recorder):
    p = cell.params
    for n in cell.ns(2, CHAIN_N_CAP):
        with rec.guard("freud-bound", n):
            bound, holds = zero_upper_bound_freud6(n, p, mp.mpf("0.01"))
            rec.outcome("freud-bound", n, holds, measured=bound)


def suite_convexity(cell: VerifyCell, rec: Recorder):
    p = cell.params
    if p.lam != -mp.mpf(1) / 2 or p.t >= 0:
        rec.add("convexity", -1, CheckStatus.SKIP, note="needs λ = −0.5 and t < 0")
        return
    for n in cell.ns(3, DERIVATIVE_N_CAP + 2):
        with rec.guard("convexity", n):
            profile = sturm_convexity_profile(n, p)
            for zone in profile.zones:
                note = f"window {zone.k}: {zone.classification}"
                if zone.holds is None:
                    rec.add("convexity", n, CheckStatus.SKIP, note=note)
                else:
                    rec.outcome("convexity", n, zone.holds, note=note)
            rec.report("convexity-printed", n, "relative deviation of the published F",
                       measured=profile.printed_deviation)


@dataclass(frozen=True)
class Suite:
    family: Family
    fn: Callable[[VerifyCell, Recorder], None]
    grid: bool = False


SUITES: Dict[str, Suite] = {
    "moments": Suite(Family.AIRY, suite_moments),
    "airy-identity": Suite(Family.AIRY, suite_airy_identity),
    "moment-ode": Suite(Family.AIRY, suite_moment_ode),
    "logderiv": Suite(Family.AIRY, suite_logderiv),
    "toda-eq": Suite(Family.AIRY, suite_toda_eq),
    "toda-sys": Suite(Family.AIRY, suite_toda_sys),
    "string": Suite(Family.AIRY, suite_string),
    "diff-sys": Suite(Family.AIRY, suite_diff_sys),
    "wang": Suite(Family.AIRY, suite_wang),
    "asympt-n": Suite(Family.AIRY, suite_asympt_n),
    "asympt-t": Suite(Family.AIRY, suite_asympt_t, grid=True),
    "ladder": Suite(Family.AIRY, suite_ladder),
    "supplementary": Suite(Family.AIRY, suite_supplementary),
    "ode": Suite(Family.AIRY, suite_ode),
    "mixed": Suite(Family.AIRY, suite_mixed),
    "zeros": Suite(Family.AIRY, suite_zeros),
    "bound": Suite(Family.AIRY, suite_bound),
    "monotonicity": Suite(Family.AIRY, suite_monotonicity, grid=True),
    "conjecture": Suite(Family.AIRY, suite_conjecture, grid=True),
    "freud-moments": Suite(Family.FREUD6, suite_freud_moments),
    "freud-ladder": Suite(Family.FREUD6, suite_freud_ladder),
    "freud-ode": Suite(Family.FREUD6, suite_freud_ode),
    "freud-mixed": Suite(Family.FREUD6, suite_freud_mixed),
    "freud-zeros": Suite(Family.FREUD6, suite_freud_zeros),
    "interlacing": Suite(Family.FREUD6, suite_interlacing),
    "freud-bound": Suite(Family.FREUD6, suite_freud_bound),
    "freud-monotonicity": Suite(Family.FREUD6, suite_freud_monotonicity, grid=True),
    "convexity": Suite(Family.FREUD6, suite_convexity),
}


def suite_names(family: Family) -> List[str]:
    return [name for name, suite in SUITES.items() if suite.family is family]


def run_cell(cell: VerifyCell) -> List[CheckRecord]:
    """Run one suite on one cell; top-level so the pool can pickle it"""
    suite = SUITES[cell.suite]
    if suite.grid:
        rec = Recorder(cell)
    else:
        rec = Recorder(cell, cell.t_values[0], cell.lambdas[0])
    logger.debug("suite %s at t=%s λ=%s", cell.suite, rec.t, rec.lam)
    try:
        suite.fn(cell, rec)
    except OpkError as exc:
        rec.add(cell.suite, -1, CheckStatus.FAIL, note=f"{type(exc).__name__}: {exc}")
    return rec.records


class VerificationManager:
    """
    Plans verification cells from a RunConfig, runs them through the worker
    pool, and assembles the report.
    """

    def __init__(self, cfg: RunConfig, levels: int = 4, verbosity: int = 0):
        self.cfg = cfg
        self.levels = levels
        self.verbosity = verbosity
        available = suite_names(cfg.family)
        unknown = [name for name in cfg.only if name not in SUITES]
        if unknown:
            raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
        foreign = [name for name in cfg.only if name not in available]
        if foreign:
            raise ValueError(f"suite(s) {', '.join(foreign)} do not apply to family {cfg.family.value}")
        self.suites = list(cfg.only) if cfg.only else available

    @property
    def grid(self) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
        if self.cfg.default_grid:
            return DEFAULT_GRIDS[self.cfg.family]
        return tuple(self.cfg.t_values), tuple(self.cfg.lambdas)

    @property
    def n_bounds(self) -> Tuple[int, int]:
        if self.cfg.n_range is not None:
            return self.cfg.n_range
        return 0, self.cfg.n_max

    def cells(self) -> List[VerifyCell]:
        ts, lambdas = self.grid
        lo, hi = self.n_bounds
        family = self.cfg.family.value
        cells = []
        for name in self.suites:
            if SUITES[name].grid:
                cells.append(VerifyCell(family, name, ts, lambdas, lo, hi, self.cfg.bits, self.levels))
                continue
            for t in ts:
                for lam in lambdas:
                    cells.append(VerifyCell(family, name, (t,), (lam,), lo, hi, self.cfg.bits, self.levels))
        return cells

    def run(self) -> VerificationReport:
        cells = self.cells()
        logger.info("running %d suite(s) over %d cells at %d bits", len(self.suites), len(cells), self.cfg.bits)
        results = run_cells(run_cell, cells, self.cfg.jobs, self.verbosity)
        report = VerificationReport(environment=self.environment(len(cells)))
        for records in results:
            report.records.extend(records)
        return report

    def environment(self, cell_count: int) -> Dict[str, object]:
        ts, lambdas = self.grid
        lo, hi = self.n_bounds
        return {
            "bits": self.cfg.bits,
            "family": self.cfg.family.value,
            "n_range": f"{lo}..{hi}",
            "t_grid": ",".join(ts),
            "lambda_grid": ",".join(lambdas),
            "suites": ",".join(self.suites),
            "cells": cell_count,
            "richardson_levels": self.levels,
            "mpmath": mpmath.__version__,
            "backend": mpmath.libmp.BACKEND,
        }
