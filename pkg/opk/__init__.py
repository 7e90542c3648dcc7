"""
opk - orthogonal polynomials for semi-classical weights

Arbitrary-precision library and CLI for the generalised Airy weight
x^λ exp(−x³/3 + tx) and the sextic Freud weight |x|^(2λ+1) exp(−x⁶ + tx²):
- Moments, Hankel determinants and recurrence coefficients
- Ladder operators, differential equations and zeros
- Verification suites with machine-readable reports
"""

__version__ = "1.0.0"

from .airy_moments import mu0_airy, mu_k_airy
from .airy_polys import eval_P, zeros_P
from .airy_recurrence import coefficients_for, recurrence_from_moments
from .config import get_config
from .freud6 import beta_freud6, eval_S, zeros_S
from .models import Family, PrecisionContext, RecurrenceCoeffs, WeightParams, ZeroSet
from .verify import VerificationManager

__all__ = [
    "Family",
    "PrecisionContext",
    "RecurrenceCoeffs",
    "VerificationManager",
    "WeightParams",
    "ZeroSet",
    "beta_freud6",
    "coefficients_for",
    "eval_P",
    "eval_S",
    "get_config",
    "mu0_airy",
    "mu_k_airy",
    "recurrence_from_moments",
    "zeros_P",
    "zeros_S",
]
