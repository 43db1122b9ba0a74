from __future__ import annotations

import json

import pytest

from roquette.checks import Check, all_passed
from roquette.harness.report import SCHEMA_KEYS, GroupRecord, VerificationReport, emit


def sample() -> VerificationReport:
    r = VerificationReport("demo", notes=["split extensions only"])
    r.groups.append(GroupRecord("C8", "cyclic 8", 8, "abc", {"subgroups": 4, "classes": 4, "source": "enumerated"}, 0.01))
    r.add_checks([Check("a", True, "fine", cases=3), Check("b", False, "broken", witness={"order": 2})], group="C8")
    r.add_checks([Check("c", False, "not run", skipped=True)])
    r.timings["total"] = 0.5
    return r


def test_empty_report_passes():
    r = VerificationReport("empty")
    assert r.passed and r.overall == "pass"
    assert tuple(r.to_dict()) == SCHEMA_KEYS


def test_json_roundtrip():
    r = sample()
    back = VerificationReport.from_json(r.to_json())
    assert back.to_dict() == r.to_dict()
    assert json.loads(emit(r).decode()) == r.to_dict()


def test_overall_and_witnesses():
    r = sample()
    assert r.overall == "fail"
    assert r.witnesses == [{"check": "b", "group": "C8", "data": {"order": 2}}]
    assert all(c.group == "C8" for c in r.checks[:2])
    assert [c.id for c in r.skipped] == ["c"]


def test_skipped_does_not_fail():
    r = VerificationReport("s")
    r.add_checks([Check("ok", True, ""), Check("later", False, "budget", skipped=True)])
    assert r.passed
    assert all_passed(r.checks)


def test_text_summary():
    text = sample().to_text()
    assert text.splitlines()[0] == "suite demo: FAIL"
    assert "  FAIL b [C8]: broken" in text and "  SKIP c: not run" in text
    assert text.splitlines()[-1].startswith("  1 passed, 1 failed, 1 skipped")


def test_unknown_format():
    with pytest.raises(ValueError):
        emit(sample(), "xml")
