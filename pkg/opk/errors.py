"""
Exception hierarchy for opk

Library code raises these; the CLI turns them into colored messages and exit
codes, and the verifier turns them into fail records.
"""
from typing import Any, Dict, Optional


class OpkError(Exception):
    """Base class for every error raised by opk"""


class DomainError(OpkError, ValueError):
    """Argument outside the domain of an operation (Γ at z ≤ 0, λ ≤ −1, a pole at x = 0)"""


class ConfigError(OpkError):
    """Unknown configuration key or unusable value"""


class PrecisionEscalation(OpkError):
    """
    A kernel could not reach its target at the current precision.

    Attributes:
        suggested_bits: Precision the caller should retry with
    """

    def __init__(self, message: str, suggested_bits: Optional[int] = None):
        super().__init__(message)
        self.suggested_bits = suggested_bits


class PrecisionExhausted(OpkError):
    """
    Escalation budget spent without reaching the target.

    Attributes:
        report: Condition data gathered on the last attempt
    """

    def __init__(self, message: str, report: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.report = report or {}


class ConvergenceFailure(OpkError):
    """Quadrature estimates did not settle at the maximum level"""


class UnreliableDerivative(OpkError):
    """Richardson tableau shows no decreasing diagonal"""


class InvalidMeasure(OpkError):
    """A Hankel determinant or β_n came out nonpositive"""


class DegenerateInput(OpkError):
    """A denominator that theory keeps away from zero vanished (P_k(0), S_k(0), S_k'(0))"""
