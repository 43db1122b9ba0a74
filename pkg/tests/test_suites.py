from __future__ import annotations

import pytest

from roquette.harness.suites import SPLIT_ONLY_NOTE, SUITES, SuiteOptions, SuiteSpec, run_suite


def stable(report):
    d = report.to_dict()
    d.pop("timings")
    for g in d["groups"]:
        g.pop("wall_time")
    return d


@pytest.mark.parametrize("name", sorted(SUITES))
def test_specs_validate(name):
    SUITES[name].validate()


def test_spec_rejects_unknown_check():
    with pytest.raises(ValueError):
        SuiteSpec("x", ["cyclic 2"], ["no-such-check"], 10, lambda o: []).validate()


def test_parallel_matches_sequential():
    o1 = SuiteOptions(jobs=1, n_list=(8, 9, 15))
    o4 = SuiteOptions(jobs=4, n_list=(8, 9, 15))
    a, b = run_suite("cyclic-fitting", o1), run_suite("cyclic-fitting", o4)
    assert stable(a) == stable(b)
    assert a.passed


def test_repeat_runs_identical():
    a, b = run_suite("roquette-p-groups"), run_suite("roquette-p-groups")
    assert stable(a) == stable(b) and a.passed


def test_budget_exhaustion_marks_skipped():
    r = run_suite("roquette-criterion", SuiteOptions(budget=1e-9))
    assert r.skipped
    assert all(c.detail == "time budget exhausted before the task ran" for c in r.skipped)
    assert r.passed  # skipped checks do not count as failures


def test_filtered_n_is_skipped_with_note():
    r = run_suite("cyclic-fitting", SuiteOptions(n_list=(20, 9)))
    assert SPLIT_ONLY_NOTE in r.notes
    (skip,) = r.skipped
    assert skip.id == "hypothesis-filter" and "20" in skip.group + skip.detail
    assert r.passed


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("missing")


def test_q8s3_suite():
    r = run_suite("q8-s3")
    assert r.passed and [c.id for c in r.checks] == ["q8s3-roquette", "q8s3-s3-expansive"]
    assert r.groups[0].order == 48
