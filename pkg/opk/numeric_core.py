"""
Precision-parameterized numerical kernels shared by every opk module:
special functions, determinants, tridiagonal eigenvalues, quadrature and
finite differences.

Every kernel takes a PrecisionContext and runs inside its ``workprec()``;
values returned carry that precision.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from mpmath import mp

from .errors import (
    ConvergenceFailure,
    DomainError,
    PrecisionEscalation,
    UnreliableDerivative,
)
from .models import PrecisionContext

logger = logging.getLogger(__name__)

# Extra bits carried by the quadrature so its error estimate sits below the target
QUAD_GUARD_BITS = 32


@dataclass(frozen=True)
class RealMatrix:
    """Square matrix of precision reals, stored row-major"""
    rows: Tuple[Tuple, ...]

    def __post_init__(self):
        n = len(self.rows)
        if any(len(row) != n for row in self.rows):
            raise DomainError("matrix must be square")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "RealMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "RealMatrix":
        return cls.from_rows([[mp.one if i == j else mp.zero for j in range(n)] for i in range(n)])


@dataclass(frozen=True)
class SymTridiag:
    """
    Symmetric tridiagonal (Jacobi) matrix.

    Attributes:
        diag: n diagonal entries
        offdiag: n−1 off-diagonal entries
    """
    diag: Tuple
    offdiag: Tuple

    def __post_init__(self):
        if len(self.diag) == 0:
            raise DomainError("empty tridiagonal matrix")
        if len(self.offdiag) != len(self.diag) - 1:
            raise DomainError("offdiag must have exactly n−1 entries")

    @property
    def n(self) -> int:
        return len(self.diag)

    @classmethod
    def jacobi(cls, alphas: Sequence, betas: Sequence, n: int) -> "SymTridiag":
        """Jacobi matrix of degree n from α_0…α_{n−1} and β_1…β_{n−1}"""
        for k in range(1, n):
            if betas[k] <= 0:
                raise DomainError(f"β_{k} must be positive to build a Jacobi matrix")
        return cls(tuple(alphas[:n]), tuple(mp.sqrt(betas[k]) for k in range(1, n)))


@dataclass(frozen=True)
class DetResult:
    """
    Determinant with its pivot-ratio condition estimate.

    Attributes:
        value: The determinant (0 when singular)
        condition: max |pivot| / min |pivot|
        singular: True when a zero pivot was met
    """
    value: object
    condition: object
    singular: bool = False


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalue midpoints with certified enclosure radii"""
    values: Tuple
    radii: Tuple

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class Derivative:
    """Richardson-extrapolated derivative and its tableau error estimate"""
    value: object
    error: object


def gamma_fn(z, ctx: PrecisionContext):
    """
    Γ(z) for real z > 0.

    Raises:
        DomainError: z ≤ 0
    """
    with ctx.workprec():
        z = mp.mpf(z)
        if z <= 0:
            raise DomainError(f"gamma_fn needs z > 0, got {mp.nstr(z, 10)}")
        return mp.gamma(z)


def hyp1f2(a, b1, b2, z, ctx: PrecisionContext, maxterms: Optional[int] = None):
    """
    1F2(a; b1, b2; z), the entire series Σ (a)_k z^k / ((b1)_k (b2)_k k!).

    Args:
        maxterms: Term budget; defaults to 40·bits

    Raises:
        DomainError: b1 or b2 is a nonpositive integer
        PrecisionEscalation: the series did not settle within the term budget
    """
    with ctx.workprec():
        a, b1, b2, z = (mp.mpf(v) for v in (a, b1, b2, z))
        for b in (b1, b2):
            if b <= 0 and mp.isint(b):
                raise DomainError(f"1F2 lower parameter {mp.nstr(b, 10)} is a nonpositive integer")
        try:
            return mp.hyp1f2(a, b1, b2, z, maxterms=maxterms or 40 * ctx.bits)
        except mp.NoConvergence as exc:
            raise PrecisionEscalation(
                f"1F2({mp.nstr(a, 8)}; {mp.nstr(b1, 8)}, {mp.nstr(b2, 8)}; {mp.nstr(z, 8)}) "
                f"did not converge at {ctx.bits} bits",
                suggested_bits=2 * ctx.bits,
            ) from exc


def airy_ai_bi(tau, ctx: PrecisionContext, derivative: int = 0):
    """
    (Ai(τ), Bi(τ)), or their derivatives when ``derivative`` is 1.

    mpmath switches between the Maclaurin series and the asymptotic
    expansion itself; see DESIGN.md for the crossover decision.
    """
    with ctx.workprec():
        tau = mp.mpf(tau)
        return mp.airyai(tau, derivative=derivative), mp.airybi(tau, derivative=derivative)


def det(m: RealMatrix, ctx: PrecisionContext) -> DetResult:
    """
    Determinant by LU with full pivoting.

    Returns:
        DetResult with value, pivot-ratio condition estimate and singular flag
    """
    n = m.n
    with ctx.workprec():
        if n == 0:
            return DetResult(mp.one, mp.one)
        a = [[mp.mpf(v) for v in row] for row in m.rows]
        sign = 1
        value = mp.one
        pivots = []
        for k in range(n):
            # largest remaining entry
            p, q, best = k, k, mp.zero
            for i in range(k, n):
                row = a[i]
                for j in range(k, n):
                    if abs(row[j]) > best:
                        p, q, best = i, j, abs(row[j])
            if best == 0:
                return DetResult(mp.zero, mp.inf, singular=True)
            if p != k:
                a[k], a[p] = a[p], a[k]
                sign = -sign
            if q != k:
                for row in a:
                    row[k], row[q] = row[q], row[k]
                sign = -sign
            pivot = a[k][k]
            pivots.append(abs(pivot))
            value *= pivot
            for i in range(k + 1, n):
                factor = a[i][k] / pivot
                if factor:
                    ri, rk = a[i], a[k]
                    for j in range(k + 1, n):
                        ri[j] -= factor * rk[j]
        condition = max(pivots) / min(pivots)
        return DetResult(sign * value, condition)


def bareiss_det(rows: Sequence[Sequence]) -> Fraction:
    """
    Exact determinant by fraction-free Bareiss elimination.

    Entries may be ints or Fractions; used as an exact oracle.
    """
    a = [[Fraction(v) for v in row] for row in rows]
    n = len(a)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def sturm_count(j: SymTridiag, x) -> int:
    """Number of eigenvalues of j strictly below x (negative LDLᵀ pivots of j − xI)"""
    count = 0
    d = mp.one
    tiny = mp.ldexp(mp.mpf(1), -mp.prec - 8)
    for i, a in enumerate(j.diag):
        if i == 0:
            d = a - x
        else:
            d = a - x - j.offdiag[i - 1] ** 2 / d
        if d == 0:
            d = -tiny
        if d < 0:
            count += 1
    return count


def tridiag_eigs(j: SymTridiag, ctx: PrecisionContext) -> Spectrum:
    """
    All eigenvalues of a symmetric tridiagonal matrix by Sturm bisection.

    Each eigenvalue is bracketed to width ≤ 2^(8−bits)·scale, scale being the
    Gershgorin radius (at least 1); the reported radius adds n·ε·scale for
    rounding in the Sturm count.
    """
    n = j.n
    with ctx.workprec():
        diag = [mp.mpf(v) for v in j.diag]
        off = [mp.mpf(v) for v in j.offdiag]
        j = SymTridiag(tuple(diag), tuple(off))
        lo_g = min(diag[i] - (abs(off[i - 1]) if i > 0 else 0) - (abs(off[i]) if i < n - 1 else 0)
                   for i in range(n))
        hi_g = max(diag[i] + (abs(off[i - 1]) if i > 0 else 0) + (abs(off[i]) if i < n - 1 else 0)
                   for i in range(n))
        scale = max(abs(lo_g), abs(hi_g), mp.one)
        width = ctx.tiny(8) * scale
        lo_g -= width
        hi_g += width

        values, radii = [], []
        for k in range(n):
            lo = values[-1] - width if values else lo_g
            lo = max(lo, lo_g)
            hi = hi_g
            while hi - lo > width:
                mid = (lo + hi) / 2
                if sturm_count(j, mid) > k:
                    hi = mid
                else:
                    lo = mid
            values.append((lo + hi) / 2)
            radii.append((hi - lo) / 2 + n * ctx.epsilon * scale)
        return Spectrum(tuple(values), tuple(radii))


def _quad_degree(bits: int) -> int:
    return int(6 + max(0, mp.log(bits / 30.0, 2))) + 2


def tanh_sinh_quad(f: Callable, a, b, ctx: PrecisionContext,
                   points: Sequence = (), scale=None):
    """
    ∫_a^b f by double-exponential quadrature.

    Half-infinite ranges use mpmath's exp-sinh style map; interior ``points``
    split the range where the integrand peaks. The rule refines its level until
    successive estimates agree, and the result is accepted when the error
    estimate is within ε^0.9 of ``scale`` (default |result|).

    Raises:
        ConvergenceFailure: estimate did not settle at the maximum level
    """
    with mp.workprec(ctx.bits + QUAD_GUARD_BITS):
        a = mp.mpf(a)
        b = mp.inf if b in (mp.inf, float("inf")) else mp.mpf(b)
        inner = sorted(mp.mpf(p) for p in points if a < p < b)
        nodes = [a, *inner, b]
        value, error = mp.quad(f, nodes, method="tanh-sinh", error=True,
                               maxdegree=_quad_degree(ctx.bits + QUAD_GUARD_BITS))
    with ctx.workprec():
        value = +value
        ref = abs(mp.mpf(scale)) if scale is not None else abs(value)
        if ref == 0:
            ref = mp.one
        tolerance = ctx.epsilon ** mp.mpf("0.9") * ref
        if error > tolerance:
            raise ConvergenceFailure(
                f"tanh-sinh on [{mp.nstr(a, 6)}, {mp.nstr(b, 6)}] stopped with error "
                f"{mp.nstr(error, 3)} > {mp.nstr(tolerance, 3)}"
            )
        logger.debug("quadrature on %d pieces, error %s", len(nodes) - 1, mp.nstr(error, 3))
        return value


def half_line_moment(a, phase: Callable, ctx: PrecisionContext, points: Sequence = ()):
    """
    ∫₀^∞ x^a exp(phase(x)) dx for a > −1, with phase(0) finite.

    For a < 0 the integrable singularity at 0 is removed by u = x^(a+1), which
    turns the integral into ∫₀^∞ exp(phase(u^(1/(a+1)))) du / (a+1); ``points``
    are given in x and mapped along.
    """
    with mp.workprec(ctx.bits + QUAD_GUARD_BITS):
        a = mp.mpf(a)
        if a <= -1:
            raise DomainError("half-line moment needs a > −1")
        if a >= 0:
            def integrand(x):
                if x == 0:
                    return mp.exp(phase(x)) if a == 0 else mp.zero
                return mp.exp(a * mp.log(x) + phase(x))
            nodes = list(points)
        else:
            s = a + 1
            inverse = 1 / s

            def integrand(u):
                return mp.exp(phase(u ** inverse)) / s
            nodes = [mp.mpf(p) ** s for p in points]
    return tanh_sinh_quad(integrand, 0, mp.inf, ctx, points=nodes)


def richardson_diff(f: Callable, t, order: int, ctx: PrecisionContext,
                    levels: int = 4, noise=None, h=None) -> Derivative:
    """
    First or second derivative of f at t by central differences with
    Richardson extrapolation.

    Args:
        f: Scalar function of t
        order: 1 or 2
        levels: Rows of the extrapolation tableau (step halved per row)
        noise: Relative accuracy of f's values (default ε); sets the roundoff floor
        h: Base step (default 2^(−bits/4)·max(1, |t|))

    Raises:
        UnreliableDerivative: the tableau diagonal does not decrease above the noise floor
    """
    if order not in (1, 2):
        raise DomainError("richardson_diff supports order 1 or 2")
    with ctx.workprec():
        t = mp.mpf(t)
        if h is None:
            h = mp.ldexp(mp.mpf(1), -(ctx.bits // 4)) * max(mp.one, abs(t))
        h = mp.mpf(h)
        noise = ctx.epsilon if noise is None else mp.mpf(noise)

        centre = f(t) if order == 2 else None
        fscale = abs(centre) if centre is not None else mp.zero
        table: List[List] = []
        step = h
        for i in range(levels):
            fp, fm = f(t + step), f(t - step)
            fscale = max(fscale, abs(fp), abs(fm))
            if order == 1:
                d = (fp - fm) / (2 * step)
            else:
                d = (fp - 2 * centre + fm) / step ** 2
            row = [d]
            for jx in range(1, i + 1):
                factor = mp.mpf(4) ** jx
                row.append(row[jx - 1] + (row[jx - 1] - table[i - 1][jx - 1]) / (factor - 1))
            table.append(row)
            step /= 2

        diagonal = [table[i][i] for i in range(levels)]
        diffs = [abs(diagonal[i] - diagonal[i - 1]) for i in range(1, levels)]
        value = diagonal[-1]
        smallest_step = h / 2 ** (levels - 1)
        roundoff = 8 * noise * max(fscale, mp.one) / smallest_step ** order
        floor = max(roundoff, ctx.tiny(0) ** mp.mpf("0.5") * max(abs(value), mp.one))
        if len(diffs) >= 2 and diffs[-1] > floor and diffs[-1] >= diffs[-2]:
            raise UnreliableDerivative(
                f"Richardson tableau not converging at t={mp.nstr(t, 8)} "
                f"(last corrections {mp.nstr(diffs[-2], 3)}, {mp.nstr(diffs[-1], 3)})"
            )
        error = (diffs[-1] if diffs else mp.zero) + roundoff
        return Derivative(value, error)
