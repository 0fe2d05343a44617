"""Tests for check results and run reports."""

import json

import pytest

from token_digraphs import CheckResult, RunReport, Status, VerificationError
from token_digraphs.reports import failed, passed, skipped, stopwatch


class TestCheckResult:
    def test_helpers(self):
        assert passed("girth", "n=3", g=3).status is Status.PASS
        assert skipped("girth", "n=3", "acyclic").status is Status.SKIP
        result = failed("girth", "n=3", "mismatch", [0, 1], g=3)
        assert result.failed
        assert not result.passed
        assert result.witness == [0, 1]
        assert result.data == {"g": 3}

    def test_to_dict_omits_empty_fields(self):
        assert passed("girth", "n=3").to_dict() == {
            "check": "girth",
            "instance": "n=3",
            "status": "pass",
        }

    def test_to_dict_with_timing(self):
        result = CheckResult("girth", "n=3", Status.PASS, elapsed=0.1234567891)
        assert result.to_dict(include_timing=True)["elapsed_s"] == 0.123457

    def test_raise_for_status(self):
        ok = passed("girth", "n=3")
        assert ok.raise_for_status() is ok
        bad = failed("girth", "n=3", "mismatch", [0])
        with pytest.raises(VerificationError, match="girth failed on n=3: mismatch") as info:
            bad.raise_for_status()
        assert info.value.result is bad

    def test_stopwatch(self):
        with stopwatch() as box:
            pass
        assert box[0] >= 0.0


class TestRunReport:
    def _report(self):
        return RunReport("verify girth", {"n_max": 3}).extend(
            [
                passed("girth", "a"),
                skipped("girth", "b", "acyclic"),
                failed("girth", "c", "mismatch", [1, 2]),
            ]
        )

    def test_summary(self):
        report = self._report()
        assert report.summary() == {"pass": 1, "fail": 1, "skip": 1, "total": 3}
        assert [r.instance for r in report.failures] == ["c"]
        assert report.exit_code == 1

    def test_clean_report_exits_zero(self):
        assert RunReport("verify girth").extend([passed("girth", "a")]).exit_code == 0
        assert RunReport("scan").exit_code == 0

    def test_json_is_deterministic(self):
        text = self._report().to_json()
        assert text == self._report().to_json()
        payload = json.loads(text)
        assert payload["command"] == "verify girth"
        assert payload["options"] == {"n_max": 3}
        assert "elapsed_s" not in payload
        assert [r["status"] for r in payload["results"]] == ["pass", "skip", "fail"]

    def test_json_with_timings(self):
        payload = json.loads(self._report().to_json(include_timing=True))
        assert "elapsed_s" in payload
        assert all("elapsed_s" in r for r in payload["results"])
