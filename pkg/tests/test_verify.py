import pytest

from opk.errors import DomainError
from mpmath import mp

import opk.verify
from opk.models import CheckStatus, Family, RunConfig
from opk.verify import (
    ANCHORS,
    ASYMPT_T_ORDERS,
    DEFAULT_GRIDS,
    SUITES,
    Recorder,
    VerificationManager,
    VerifyCell,
    run_cell,
    suite_names,
)


def point_cell(suite, t="1", lam="0.5", family="airy", n_hi=4, bits=256):
    return VerifyCell(family, suite, (t,), (lam,), 0, n_hi, bits)


def statuses(records):
    return {r.status for r in records}


class TestRegistry:
    def test_every_suite_listed(self):
        airy = {"moments", "airy-identity", "moment-ode", "logderiv", "toda-eq", "toda-sys", "string",
                "diff-sys", "wang", "asympt-n", "asympt-t", "ladder", "supplementary", "ode", "mixed",
                "zeros", "bound", "monotonicity", "conjecture"}
        freud = {"freud-moments", "freud-ladder", "freud-ode", "freud-mixed", "freud-zeros",
                 "interlacing", "freud-bound", "freud-monotonicity", "convexity"}
        assert set(suite_names(Family.AIRY)) == airy
        assert set(suite_names(Family.FREUD6)) == freud
        assert set(SUITES) == airy | freud

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            VerificationManager(RunConfig("verify", only=("nonsense",)))

    def test_suite_of_other_family(self):
        with pytest.raises(ValueError):
            VerificationManager(RunConfig("verify", family=Family.FREUD6, only=("string",)))

    def test_default_grid_cells(self):
        cfg = RunConfig("verify", only=("moments", "conjecture"), default_grid=True, n_max=3)
        cells = VerificationManager(cfg).cells()
        ts, lambdas = DEFAULT_GRIDS[Family.AIRY]
        # one cell per grid point plus one grid-wide cell
        assert len(cells) == len(ts) * len(lambdas) + 1

    def test_n_range_bounds_cells(self):
        cfg = RunConfig("verify", only=("string",), n_range=(1, 3), n_max=10)
        cell = VerificationManager(cfg).cells()[0]
        assert (cell.n_lo, cell.n_hi) == (1, 3)
        assert list(cell.ns(0)) == [1, 2, 3]


class TestRecorder:
    def test_guard_turns_errors_into_fail(self):
        rec = Recorder(point_cell("ladder"), "1", "0.5")
        with rec.guard("ladder", 3):
            raise DomainError("pole at x = 0")
        assert len(rec.records) == 1
        record = rec.records[0]
        assert record.status == CheckStatus.FAIL.value
        assert "DomainError" in record.note
        assert record.anchor == ANCHORS["ladder"]

    def test_outcome_none_is_skip(self):
        rec = Recorder(point_cell("bound"), "1", "0.5")
        rec.outcome("zero-bound", 2, None, note="inconclusive")
        assert rec.records[0].status == CheckStatus.SKIP.value


class TestSuites:
    def test_string_suite_passes(self):
        records = run_cell(point_cell("string"))
        assert records
        assert statuses(records) == {CheckStatus.PASS.value}
        assert {r.identity for r in records} == {"string-first", "string-second"}

    def test_airy_identity_skips_other_lambdas(self):
        records = run_cell(point_cell("airy-identity", lam="0"))
        assert statuses(records) == {CheckStatus.SKIP.value}

    def test_airy_identity_at_minus_half(self):
        records = run_cell(point_cell("airy-identity", lam="-0.5"))
        assert statuses(records) == {CheckStatus.PASS.value}

    def test_convexity_outside_regime_skips(self):
        records = run_cell(point_cell("convexity", family="freud6", t="1", lam="0"))
        assert statuses(records) == {CheckStatus.SKIP.value}

    def test_freud_ladder_suite(self):
        records = run_cell(point_cell("freud-ladder", family="freud6", t="1", lam="1", n_hi=3))
        assert CheckStatus.FAIL.value not in statuses(records)
        assert "freud-ladder-uncorrected" in {r.identity for r in records}

    def test_records_carry_grid_point(self):
        records = run_cell(point_cell("moment-ode", t="3", lam="2"))
        assert [(r.t, r.lam, r.family) for r in records] == [("3", "2", "airy")]


class TestFailureIsolation:
    def test_one_index_failing_keeps_the_others(self, monkeypatch):
        real = opk.verify.string_system_residual

        def failing_at_two(n, p, coeffs):
            if n == 2:
                raise DomainError("pole at x = 0")
            return real(n, p, coeffs)

        monkeypatch.setattr(opk.verify, "string_system_residual", failing_at_two)
        records = run_cell(point_cell("string"))
        failed = [r for r in records if r.status == CheckStatus.FAIL.value]
        assert [(r.identity, r.n) for r in failed] == [("string-first", 2)]
        passed = {r.n for r in records if r.status == CheckStatus.PASS.value}
        assert {0, 1, 3, 4} <= passed

    def test_ladder_index_failure_is_local(self, monkeypatch):
        real = opk.verify.ladder_residual

        def failing_at_two(n, x, coeffs):
            if n == 2:
                raise DomainError("pole at x = 0")
            return real(n, x, coeffs)

        monkeypatch.setattr(opk.verify, "ladder_residual", failing_at_two)
        records = run_cell(point_cell("ladder"))
        assert {r.n for r in records if r.status == CheckStatus.FAIL.value} == {2}
        assert {1, 3, 4} <= {r.n for r in records if r.status == CheckStatus.PASS.value}

    def test_shared_input_failure_is_one_record(self, monkeypatch):
        def broken(*args):
            raise DomainError("no coefficients")

        monkeypatch.setattr(opk.verify, "coefficients_for", broken)
        records = run_cell(point_cell("string"))
        assert len(records) == 1
        assert records[0].status == CheckStatus.FAIL.value
        assert records[0].identity == "string-first"


class TestAsymptoticOrders:
    def test_predicted_orders(self):
        assert ASYMPT_T_ORDERS[("alpha", 1)][0] == mp.mpf(5) / 2
        assert ASYMPT_T_ORDERS[("alpha", -1)][0] == 7
        assert ASYMPT_T_ORDERS[("beta", 1)][0] == mp.mpf(7) / 2
        assert ASYMPT_T_ORDERS[("beta", -1)][0] == 8

    def test_windows(self):
        for key in [("alpha", 1), ("alpha", -1), ("beta", -1)]:
            assert ASYMPT_T_ORDERS[key][1] == mp.mpf("0.3")
        assert ASYMPT_T_ORDERS[("beta", 1)][1] == mp.mpf("1.2")

    @pytest.mark.slow
    def test_order_checks_cover_every_index(self):
        records = run_cell(point_cell("asympt-t", lam="0.5", n_hi=3))
        orders = [r for r in records if r.identity == "asympt-t-order"]
        assert sorted({r.n for r in orders}) == [0, 1, 2, 3]
        assert len(orders) == 4 * 4 - 2
        assert statuses(orders) == {CheckStatus.PASS.value}

    @pytest.mark.slow
    def test_large_n_alpha_is_judged_relative(self):
        records = run_cell(point_cell("asympt-n"))
        alpha = [r for r in records if r.identity == "asympt-n-alpha"]
        assert len(alpha) == 1
        assert float(alpha[0].tolerance) == pytest.approx(3 / 256, rel=1e-5)
        assert alpha[0].note == "relative error"
        assert alpha[0].status == CheckStatus.PASS.value


class TestManager:
    def test_run_small_grid(self):
        cfg = RunConfig("verify", t_values=["-1", "1"], lambdas=["0"], n_max=3,
                        only=("ladder", "logderiv"))
        report = VerificationManager(cfg).run()
        assert report.passed
        assert report.summary()["total"] > 0
        assert report.environment["suites"] == "ladder,logderiv"
        assert report.environment["family"] == "airy"

    def test_report_is_order_independent(self):
        cfg = RunConfig("verify", t_values=["0", "2"], lambdas=["0.5"], n_max=2, only=("moment-ode",))
        serial = VerificationManager(cfg).run().to_dict()
        cfg.jobs = 2
        pooled = VerificationManager(cfg).run().to_dict()
        assert serial == pooled
