import pytest
from mpmath import mp

from opk.errors import DomainError
from opk.models import (
    CheckRecord,
    CheckStatus,
    Family,
    PrecisionContext,
    RecurrenceCoeffs,
    Residual,
    RunConfig,
    VerificationReport,
    WeightParams,
    ZeroSet,
)


def record(status, suite="moments", n=0, identity="moment-closed-form"):
    return CheckRecord(suite, identity, "", "airy", n, "0", "0", "", "", status.value)


class TestPrecisionContext:
    def test_digits(self):
        assert PrecisionContext(256).digits == 75

    def test_escalation_rounds_to_32(self):
        assert PrecisionContext(256).escalated().bits == 384
        assert PrecisionContext(100).escalated().bits == 160

    def test_hankel_floor(self):
        assert PrecisionContext.for_hankel(5).bits == 256
        assert PrecisionContext.for_hankel(20).bits == 24 * 20 + 64


class TestWeightParams:
    def test_values_converted(self, ctx):
        p = WeightParams("1.5", "0.5", Family.AIRY, ctx)
        assert p.t == mp.mpf("1.5")
        assert p.shifted(2).lam == mp.mpf("2.5")

    def test_hashable_for_caches(self, ctx):
        assert hash(WeightParams(1, 0, Family.AIRY, ctx)) == hash(WeightParams(1, 0, Family.AIRY, ctx))

    def test_lambda_bound(self, ctx):
        with pytest.raises(DomainError):
            WeightParams(0, "-1.5", Family.FREUD6, ctx)

    def test_label(self, ctx):
        assert WeightParams(2, 0, Family.FREUD6, ctx).label() == "freud6(t=2.0, λ=0.0)"


class TestRecurrenceCoeffs:
    def test_out_of_range_indices(self, ctx):
        coeffs = RecurrenceCoeffs(WeightParams(0, 0, Family.AIRY, ctx), (1, 2), (0, 3))
        assert coeffs.alpha(-1) == 0
        assert coeffs.beta(0) == 0
        assert coeffs.N == 1
        with pytest.raises(DomainError):
            coeffs.require(2)


class TestResidual:
    def test_holds(self):
        assert Residual(mp.mpf("1e-30"), mp.mpf("1e-20")).holds
        assert not Residual(mp.mpf(1), mp.mpf("1e-20")).holds

    def test_skipped_counts_as_holding(self):
        assert Residual(mp.mpf(5), 0, skipped=True).holds

    def test_relative(self):
        assert Residual(mp.mpf(2), 1, scale=mp.mpf(8)).relative == mp.mpf("0.25")


class TestZeroSet:
    def test_enclosures(self):
        zeros = ZeroSet(3, (mp.mpf(-1), mp.mpf(0), mp.mpf(1)), (mp.mpf("0.1"),) * 3)
        assert len(zeros) == 3
        assert zeros.positive() == [(mp.mpf(1), mp.mpf("0.1"))]
        assert zeros.contains(mp.mpf("0.05"))
        assert not zeros.contains(mp.mpf("0.5"))


class TestReport:
    def test_summary_and_pass(self):
        report = VerificationReport([record(CheckStatus.PASS), record(CheckStatus.SKIP)])
        assert report.passed
        assert report.summary() == {"pass": 1, "fail": 0, "skip": 1, "report": 0, "total": 2}
        assert len(report.skips()) == 1

    def test_fail_breaks_pass(self):
        assert not VerificationReport([record(CheckStatus.FAIL)]).passed

    def test_sorted_records_deterministic(self):
        a = record(CheckStatus.PASS, n=2)
        b = record(CheckStatus.PASS, n=1)
        c = record(CheckStatus.PASS, suite="bound", identity="zero-bound")
        report = VerificationReport([a, b, c])
        assert report.sorted_records() == [c, b, a]

    def test_dict_round_trip_of_record(self):
        a = record(CheckStatus.REPORT)
        assert CheckRecord.from_dict(a.to_dict()) == a

    def test_to_dict_layout(self):
        data = VerificationReport([record(CheckStatus.PASS)], {"bits": 256}).to_dict()
        assert list(data) == ["summary", "environment", "records"]


class TestRunConfig:
    def test_defaults(self):
        cfg = RunConfig("coeffs")
        assert cfg.family is Family.AIRY
        assert cfg.wants(100)

    def test_n_range(self):
        cfg = RunConfig("verify", n_range=(1, 3))
        assert cfg.wants(2) and not cfg.wants(4)

    @pytest.mark.parametrize("kwargs", [
        {"t_values": []},
        {"lambdas": []},
        {"lambdas": ["-1"]},
        {"n_max": 0},
        {"n_range": (4, 2)},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            RunConfig("coeffs", **kwargs)
