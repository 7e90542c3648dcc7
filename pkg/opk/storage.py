"""
Deterministic CSV and JSON output for opk tables and verification reports
Identical rows and precision give identical bytes
"""
import csv
import io
import json
import sys
from contextlib import contextmanager
from typing import Any, Dict, Iterable, List, Optional, Sequence

from mpmath import mp

from .models import VerificationReport

FORMATS = ("csv", "json")


def format_real(value, digits: int) -> str:
    """
    Scientific notation with a fixed number of significant digits and an
    explicit exponent sign, e.g. ``1.2877903e+0``.
    """
    if isinstance(value, (bool, str)) or value is None:
        return str(value)
    # an mpf keeps its own precision; rounding through mp.mpf would cut it to mp.prec
    x = value if isinstance(value, mp.mpf) else mp.mpf(value)
    if x == 0:
        return "0.0e+0"
    if not mp.isfinite(x):
        return str(x)
    text = mp.nstr(x, digits, min_fixed=0, max_fixed=0, show_zero_exponent=True)
    if "e" not in text:
        text += "e+0"
    return text


def format_cell(value, digits: int) -> Any:
    """Ints and strings pass through; everything numeric goes through format_real"""
    if isinstance(value, bool) or isinstance(value, int) or isinstance(value, str) or value is None:
        return value
    return format_real(value, digits)


class ResultWriter:
    """
    Writes tables and reports to a file or stdout.

    Rows are written in the order given; callers sort them before writing.
    """

    def __init__(self, out: Optional[str] = None, fmt: str = "csv", digits: int = 30):
        """
        Args:
            out: Output path, None for stdout
            fmt: csv or json
            digits: Significant digits for reals
        """
        if fmt not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")
        self.out = out
        self.fmt = fmt
        self.digits = digits

    @contextmanager
    def _stream(self):
        """Open the target; stdout is never closed"""
        if self.out is None:
            yield sys.stdout
            return
        with open(self.out, "w", newline="", encoding="utf-8") as f:
            yield f

    def render_table(self, columns: Sequence[str], rows: Iterable[Dict[str, Any]]) -> str:
        """Table text in the writer's format"""
        formatted = [{c: format_cell(row.get(c), self.digits) for c in columns} for row in rows]
        if self.fmt == "json":
            return json.dumps({"columns": list(columns), "rows": formatted}, indent=2,
                              ensure_ascii=False) + "\n"
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n")
        writer.writeheader()
        for row in formatted:
            writer.writerow({c: "" if v is None else v for c, v in row.items()})
        return buffer.getvalue()

    def render_report(self, report: VerificationReport) -> str:
        """Report text: the full JSON document, or one CSV row per record"""
        if self.fmt == "json":
            return json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n"
        records = [r.to_dict() for r in report.sorted_records()]
        columns = list(RECORD_COLUMNS)
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
        return buffer.getvalue()

    def write_table(self, columns: Sequence[str], rows: List[Dict[str, Any]]):
        text = self.render_table(columns, rows)
        with self._stream() as f:
            f.write(text)

    def write_report(self, report: VerificationReport):
        text = self.render_report(report)
        with self._stream() as f:
            f.write(text)


RECORD_COLUMNS = ("suite", "identity", "anchor", "family", "n", "t", "lam",
                  "residual", "tolerance", "status", "note")
