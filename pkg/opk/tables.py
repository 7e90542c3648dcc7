"""
High-level table API behind the coeffs, zeros and moments commands

Each (t, λ) grid point is one picklable cell; the cell functions run in the
worker pool and return plain row dicts.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from mpmath import mp

from .airy_moments import moment_quadrature, mu_k_airy
from .airy_polys import zero_bound_check, zeros_P
from .airy_recurrence import coefficients_for
from .freud6 import beta_freud6, moment_quadrature_freud6, mu_freud6, zero_upper_bound_freud6, zeros_S
from .models import Family, PrecisionContext, RunConfig, WeightParams

logger = logging.getLogger(__name__)

COEFF_COLUMNS = ("n", "t", "lambda", "alpha", "beta", "beta_increasing")
ZERO_COLUMNS = ("n", "index", "t", "lambda", "zero", "radius", "bound", "bound_holds")
MOMENT_COLUMNS = ("k", "t", "lambda", "moment")
ORACLE_COLUMNS = ("quadrature", "deviation")


@dataclass(frozen=True)
class TableCell:
    """One grid point of a table request"""
    family: str
    t: str
    lam: str
    n_max: int
    bits: int
    oracle: bool = False

    @property
    def params(self) -> WeightParams:
        return WeightParams(self.t, self.lam, Family(self.family), PrecisionContext(self.bits))


def coeff_rows(cell: TableCell) -> List[Dict[str, Any]]:
    """(n, t, λ, α_n, β_n) for n ≤ n_max; α_n ≡ 0 for the Freud family"""
    p = cell.params
    if p.family is Family.FREUD6:
        # β_{n+1} for the observation column
        coeffs = beta_freud6(p, cell.n_max + 1)
    else:
        coeffs = coefficients_for(p, cell.n_max + 1)
    rows = []
    for n in range(cell.n_max + 1):
        increasing = None if n == 0 else bool(coeffs.beta(n + 1) > coeffs.beta(n))
        rows.append({
            "n": n,
            "t": cell.t,
            "lambda": cell.lam,
            "alpha": coeffs.alpha(n),
            "beta": coeffs.beta(n),
            "beta_increasing": increasing,
        })
    return rows


def zero_rows(cell: TableCell) -> List[Dict[str, Any]]:
    """
    Zeros of the degree-n_max polynomial with enclosure radii, ν = 1 for the
    largest, and the family's bound: the G-zero for Airy, max √(c_nβ_k) for Freud.
    """
    p = cell.params
    n = cell.n_max
    if p.family is Family.FREUD6:
        zeros = zeros_S(n, beta_freud6(p, n))
        bound, holds = zero_upper_bound_freud6(n, p) if n >= 2 else (None, None)
    else:
        zeros = zeros_P(n, coefficients_for(p, n))
        if n >= 2:
            check = zero_bound_check(n, p)
            bound, holds = check.bound, None if check.inconclusive else check.holds
        else:
            bound, holds = None, None
    rows = []
    for i in range(len(zeros)):
        rows.append({
            "n": n,
            "index": n - i,
            "t": cell.t,
            "lambda": cell.lam,
            "zero": zeros.zeros[i],
            "radius": zeros.radii[i],
            "bound": bound,
            "bound_holds": holds,
        })
    return rows


def moment_rows(cell: TableCell) -> List[Dict[str, Any]]:
    """μ_k for k ≤ n_max, with a quadrature column when the oracle is requested"""
    p = cell.params
    rows = []
    for k in range(cell.n_max + 1):
        if p.family is Family.FREUD6:
            value = mu_freud6(p, k)
        else:
            value = mu_k_airy(p, k)
        row: Dict[str, Any] = {"k": k, "t": cell.t, "lambda": cell.lam, "moment": value}
        if cell.oracle:
            if p.family is Family.FREUD6:
                oracle = moment_quadrature_freud6(p, k)
            else:
                oracle = moment_quadrature(p, k)
            with p.ctx.workprec():
                deviation = abs(value - oracle) / abs(value) if value else abs(oracle)
            row.update({"quadrature": oracle, "deviation": deviation})
        rows.append(row)
    return rows


def expand_t(text: str, ctx: PrecisionContext) -> List[str]:
    """
    '0.5' → ['0.5']; 'a:b:step' → a, a+step, …, up to b inclusive.

    Raises:
        ValueError: malformed range, nonpositive step or empty range
    """
    parts = text.split(":")
    if len(parts) == 1:
        ctx.mpf(parts[0])
        return [parts[0].strip()]
    if len(parts) != 3:
        raise ValueError(f"t must be a value or a:b:step, got '{text}'")
    with ctx.workprec():
        a, b, step = (mp.mpf(s) for s in parts)
        if step <= 0:
            raise ValueError("t step must be positive")
        if b < a:
            raise ValueError(f"t range '{text}' is empty")
        count = int(mp.floor((b - a) / step + mp.mpf(10) ** -12)) + 1
        return [mp.nstr(a + i * step, 15) for i in range(count)]


def expand_lambdas(text: str) -> List[str]:
    values = [v.strip() for v in text.split(",") if v.strip()]
    if not values:
        raise ValueError("λ list is empty")
    return values


def table_cells(cfg: RunConfig) -> List[TableCell]:
    return [TableCell(cfg.family.value, t, lam, cfg.n_max, cfg.bits, cfg.oracle)
            for t in cfg.t_values for lam in cfg.lambdas]


def table_columns(command: str, oracle: bool = False) -> Tuple[str, ...]:
    if command == "coeffs":
        return COEFF_COLUMNS
    if command == "zeros":
        return ZERO_COLUMNS
    return MOMENT_COLUMNS + (ORACLE_COLUMNS if oracle else ())


ROW_BUILDERS = {"coeffs": coeff_rows, "zeros": zero_rows, "moments": moment_rows}
