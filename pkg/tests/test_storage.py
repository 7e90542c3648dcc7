import csv
import io
import json

import pytest
from mpmath import mp

from opk.models import CheckRecord, CheckStatus, VerificationReport
from opk.storage import RECORD_COLUMNS, ResultWriter, format_cell, format_real


class TestFormatting:
    def test_explicit_exponent_sign(self):
        with mp.workprec(256):
            assert format_real(mp.mpf("1.2877903"), 8) == "1.2877903e+0"
            assert format_real(mp.mpf("-0.00125"), 3) == "-1.25e-3"

    def test_zero(self):
        assert format_real(mp.zero, 10) == "0.0e+0"

    def test_keeps_precision_of_mpf(self):
        with mp.workprec(256):
            third = mp.mpf(1) / 3
        # formatted outside the 256-bit context; the digits must survive
        assert format_real(third, 40) == "3." + "3" * 39 + "e-1"

    def test_cells(self):
        assert format_cell(3, 10) == 3
        assert format_cell(True, 10) is True
        assert format_cell(None, 10) is None
        assert format_cell(mp.mpf(2), 3) == "2.0e+0"


class TestWriter:
    def test_csv_table(self):
        writer = ResultWriter(fmt="csv", digits=4)
        text = writer.render_table(("n", "beta", "flag"), [{"n": 0, "beta": mp.zero, "flag": None},
                                                           {"n": 1, "beta": mp.mpf(2), "flag": True}])
        rows = list(csv.reader(io.StringIO(text)))
        assert rows == [["n", "beta", "flag"], ["0", "0.0e+0", ""], ["1", "2.0e+0", "True"]]

    def test_json_table(self):
        text = ResultWriter(fmt="json", digits=4).render_table(("k", "moment"), [{"k": 0, "moment": mp.one}])
        assert json.loads(text) == {"columns": ["k", "moment"], "rows": [{"k": 0, "moment": "1.0e+0"}]}

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            ResultWriter(fmt="xml")

    def test_report_csv_sorted(self):
        records = [
            CheckRecord("zeros", "interlacing", "", "airy", 3, "0", "0", "", "", CheckStatus.PASS.value),
            CheckRecord("bound", "zero-bound", "", "airy", 2, "0", "0", "", "", CheckStatus.FAIL.value),
        ]
        text = ResultWriter(fmt="csv").render_report(VerificationReport(records))
        rows = list(csv.DictReader(io.StringIO(text)))
        assert list(rows[0]) == list(RECORD_COLUMNS)
        assert [r["suite"] for r in rows] == ["bound", "zeros"]

    def test_write_to_file_is_byte_stable(self, tmp_path):
        rows = [{"n": n, "beta": mp.mpf(n) / 7} for n in range(4)]
        outputs = []
        for name in ("a.csv", "b.csv"):
            path = tmp_path / name
            ResultWriter(str(path), "csv", 12).write_table(("n", "beta"), rows)
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1]
