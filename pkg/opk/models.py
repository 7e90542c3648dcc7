"""
Shared value types for opk: precision contexts, weight parameters,
recurrence data, zero sets and verification records
"""
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from mpmath import mp

from .errors import DomainError

MIN_BITS = 64


@dataclass(frozen=True)
class PrecisionContext:
    """
    Binary working precision shared by every real created under it.

    Attributes:
        bits: Mantissa width; all kernels run inside ``workprec()``
    """
    bits: int = 256

    def __post_init__(self):
        if int(self.bits) < MIN_BITS:
            raise DomainError(f"precision must be at least {MIN_BITS} bits, got {self.bits}")

    @property
    def epsilon(self):
        """Unit roundoff 2^(1−bits)"""
        return mp.ldexp(mp.mpf(1), 1 - self.bits)

    @property
    def digits(self) -> int:
        """Significant decimal digits used when formatting output"""
        return int(self.bits * 0.301) - 2

    def workprec(self):
        return mp.workprec(self.bits)

    def mpf(self, value):
        """Convert ``value`` (int, str, float or mpf) at this precision"""
        with self.workprec():
            return +mp.mpf(value)

    def tiny(self, exponent: int):
        """2^(exponent − bits); convenience for tolerances"""
        return mp.ldexp(mp.mpf(1), exponent - self.bits)

    def escalated(self, factor: float = 1.5) -> "PrecisionContext":
        """Next precision on the escalation ladder, rounded up to 32 bits"""
        bits = int(self.bits * factor)
        return PrecisionContext(-(-bits // 32) * 32)

    def doubled(self) -> "PrecisionContext":
        return PrecisionContext(2 * self.bits)

    @classmethod
    def for_hankel(cls, n_max: int, floor: int = 256) -> "PrecisionContext":
        """Precision that absorbs pivot decay of Hankel matrices up to Δ_{n_max}"""
        return cls(max(floor, 24 * n_max + 64))


class Family(Enum):
    """Weight families handled by opk"""
    AIRY = "airy"
    FREUD6 = "freud6"


@dataclass(frozen=True)
class WeightParams:
    """
    One weight instance: x^λ exp(−x³/3 + tx) on (0, ∞) for the Airy family,
    |x|^(2λ+1) exp(−x⁶ + tx²) on ℝ for the sextic Freud family.

    Attributes:
        t: Deformation parameter
        lam: Exponent λ > −1
        family: Weight family
        ctx: Working precision
    """
    t: Any
    lam: Any
    family: Family = Family.AIRY
    ctx: PrecisionContext = field(default_factory=PrecisionContext)

    def __post_init__(self):
        t = self.ctx.mpf(self.t)
        lam = self.ctx.mpf(self.lam)
        if not mp.isfinite(t):
            raise DomainError("t must be finite")
        if lam <= -1:
            raise DomainError(f"λ must exceed −1, got {mp.nstr(lam, 8)}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "lam", lam)

    @property
    def bits(self) -> int:
        return self.ctx.bits

    def with_lambda(self, lam) -> "WeightParams":
        return replace(self, lam=lam)

    def shifted(self, dlam) -> "WeightParams":
        """Same weight with λ replaced by λ + dlam"""
        with self.ctx.workprec():
            return replace(self, lam=self.lam + dlam)

    def with_t(self, t) -> "WeightParams":
        return replace(self, t=t)

    def with_ctx(self, ctx: PrecisionContext) -> "WeightParams":
        return replace(self, ctx=ctx)

    def label(self) -> str:
        return f"{self.family.value}(t={mp.nstr(self.t, 8)}, λ={mp.nstr(self.lam, 8)})"


@dataclass(frozen=True)
class MomentTable:
    """
    Moments μ_0 … μ_kmax of one weight.

    Attributes:
        params: Weight the moments belong to
        values: Moments in index order
    """
    params: WeightParams
    values: Tuple[Any, ...]

    @property
    def k_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, k: int):
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class HankelCache:
    """
    Hankel determinants Δ_0 … Δ_{N+1} and last-column-shifted minors
    σ_0 … σ_{N+1} for one weight, with the pivot-ratio condition of each.
    """
    params: WeightParams
    deltas: Tuple[Any, ...]
    shifted: Tuple[Any, ...]
    conditions: Tuple[Any, ...]

    @property
    def condition(self):
        return max(self.conditions)


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """
    Recurrence coefficients of xP_n = P_{n+1} + α_nP_n + β_nP_{n−1}.

    Attributes:
        params: Weight; its ctx is the precision actually used
        alphas: α_0 … α_N
        betas: β_0 = 0, β_1 … β_N
        condition: Largest pivot ratio met while computing them
        discrepancy: Largest relative disagreement between the two routes
        escalations: Number of precision escalations taken
    """
    params: WeightParams
    alphas: Tuple[Any, ...]
    betas: Tuple[Any, ...]
    condition: Any = 1
    discrepancy: Any = 0
    escalations: int = 0

    @property
    def N(self) -> int:
        return len(self.alphas) - 1

    @property
    def ctx(self) -> PrecisionContext:
        return self.params.ctx

    def alpha(self, n: int):
        """α_n, with α_n = 0 for n < 0"""
        if n < 0:
            return mp.zero
        return self.alphas[n]

    def beta(self, n: int):
        """β_n, with β_n = 0 for n ≤ 0"""
        if n <= 0:
            return mp.zero
        return self.betas[n]

    @property
    def accuracy(self):
        """Relative accuracy estimate of the coefficients"""
        with self.ctx.workprec():
            return max(self.ctx.epsilon * max(mp.mpf(1), mp.mpf(self.condition)),
                       mp.mpf(self.discrepancy))

    def require(self, n: int, what: str = "operation"):
        if n > self.N:
            raise DomainError(f"{what} needs coefficients up to index {n}, have {self.N}")


@dataclass(frozen=True)
class Residual:
    """
    A residual together with the tolerance it is judged against.

    Attributes:
        value: Left minus right
        tolerance: Acceptance threshold for |value|
        scale: Magnitude of the largest term, for relative reporting
        skipped: True when the sample point was excluded
        note: Reason for a skip or other remark
    """
    value: Any
    tolerance: Any
    scale: Any = 1
    skipped: bool = False
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.skipped or abs(self.value) <= self.tolerance

    @property
    def relative(self):
        if not self.scale:
            return abs(self.value)
        return abs(self.value) / abs(self.scale)


@dataclass(frozen=True)
class ZeroSet:
    """
    Zeros of one polynomial in ascending order with enclosure radii.

    Attributes:
        n: Degree
        zeros: Enclosure midpoints, ascending
        radii: Enclosure radii
        params: Weight of the polynomial
    """
    n: int
    zeros: Tuple[Any, ...]
    radii: Tuple[Any, ...]
    params: Optional[WeightParams] = None

    def lo(self, i: int):
        return self.zeros[i] - self.radii[i]

    def hi(self, i: int):
        return self.zeros[i] + self.radii[i]

    def __len__(self) -> int:
        return len(self.zeros)

    def __iter__(self):
        return iter(self.zeros)

    def positive(self) -> List[Tuple[Any, Any]]:
        """(midpoint, radius) of the zeros whose enclosure lies right of 0, ascending"""
        return [(z, r) for z, r in zip(self.zeros, self.radii) if z - r > 0]

    def contains(self, x) -> bool:
        """True if some enclosure contains x"""
        return any(abs(x - z) <= r for z, r in zip(self.zeros, self.radii))


class CheckStatus(Enum):
    """Outcome of one verification check"""
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"
    REPORT = "report"


@dataclass
class CheckRecord:
    """
    One verification check at one grid point.

    Attributes:
        suite: Suite name used by --only
        identity: Name of the identity or property checked
        anchor: Where the identity comes from, in words
        family: Weight family value
        n: Index checked (or -1 when not indexed)
        t: Grid t, formatted
        lam: Grid λ, formatted
        residual: Residual or measured quantity, formatted
        tolerance: Tolerance it was judged against, formatted
        status: pass, fail, skip or report
        note: Extra information (skip reason, adjudication outcome, error text)
    """
    suite: str
    identity: str
    anchor: str
    family: str
    n: int
    t: str
    lam: str
    residual: str
    tolerance: str
    status: str
    note: str = ""

    def sort_key(self) -> Tuple:
        return (self.family, self.suite, self.identity, self.t, self.lam, self.n, self.note)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "CheckRecord":
        return cls(**data)


@dataclass
class VerificationReport:
    """
    All records of one verification run plus the environment it ran in.
    Overall pass iff there are no fail records.
    """
    records: List[CheckRecord] = field(default_factory=list)
    environment: Dict[str, Any] = field(default_factory=dict)

    def sorted_records(self) -> List[CheckRecord]:
        return sorted(self.records, key=CheckRecord.sort_key)

    def summary(self) -> Dict[str, int]:
        counts = {status.value: 0 for status in CheckStatus}
        for record in self.records:
            counts[record.status] += 1
        counts["total"] = len(self.records)
        return counts

    def suite_summary(self) -> Dict[str, Dict[str, int]]:
        table: Dict[str, Dict[str, int]] = {}
        for record in self.records:
            row = table.setdefault(record.suite, {status.value: 0 for status in CheckStatus})
            row[record.status] += 1
        return dict(sorted(table.items()))

    @property
    def passed(self) -> bool:
        return not any(r.status == CheckStatus.FAIL.value for r in self.records)

    def skips(self) -> List[CheckRecord]:
        return [r for r in self.sorted_records() if r.status == CheckStatus.SKIP.value]

    def to_dict(self) -> dict:
        return {
            "summary": self.summary(),
            "environment": dict(sorted(self.environment.items())),
            "records": [r.to_dict() for r in self.sorted_records()],
        }


@dataclass
class RunConfig:
    """
    Parsed command-line request.

    Attributes:
        command: coeffs, zeros, moments or verify
        family: Weight family
        t_values: Grid of t values (strings as given, expanded from a:b:step)
        lambdas: λ values (strings)
        n_max: Largest index
        bits: Working precision
        jobs: Worker processes
        fmt: csv or json
        out: Output path, None for stdout
        only: Verification suites to run (empty means all)
        n_range: Optional (lo, hi) index filter for verify
        oracle: Add a quadrature column to moment tables
        default_grid: True when t and λ were not given (verify uses the standard grid)
    """
    command: str
    family: Family = Family.AIRY
    t_values: List[str] = field(default_factory=lambda: ["0"])
    lambdas: List[str] = field(default_factory=lambda: ["0"])
    n_max: int = 10
    bits: int = 256
    jobs: int = 1
    fmt: str = "csv"
    out: Optional[str] = None
    only: Tuple[str, ...] = ()
    n_range: Optional[Tuple[int, int]] = None
    oracle: bool = False
    default_grid: bool = False

    def __post_init__(self):
        if not self.t_values:
            raise DomainError("t range is empty")
        if not self.lambdas:
            raise DomainError("λ list is empty")
        if self.n_max < 1:
            raise DomainError("n_max must be at least 1")
        ctx = PrecisionContext(self.bits)
        for lam in self.lambdas:
            if ctx.mpf(lam) <= -1:
                raise DomainError(f"λ must exceed −1, got {lam}")
        if self.n_range is not None and self.n_range[0] > self.n_range[1]:
            raise DomainError("n range is empty")

    @property
    def ctx(self) -> PrecisionContext:
        return PrecisionContext(self.bits)

    def params(self, t: str, lam: str) -> WeightParams:
        return WeightParams(t, lam, self.family, self.ctx)

    def wants(self, n: int) -> bool:
        if self.n_range is None:
            return True
        return self.n_range[0] <= n <= self.n_range[1]
