import json

import pytest

from cyclovertex.suites import SUITES, RunReport, run_suite


def test_report_counts_are_consistent():
    rep = RunReport("x", 0, {})
    rep.record("a", True)
    rep.record("b", False, {"lhs": "1"})
    assert rep.cases == rep.passed + rep.failed == 2
    assert not rep.ok
    out = rep.to_json()
    assert out["schema"] == 1 and out["failures"] == [{"case": "b", "witness": {"lhs": "1"}}]
    assert "seconds" not in out


def test_empty_report_is_not_a_pass():
    assert not RunReport("x", 0, {}).ok


@pytest.mark.parametrize("suite", ["need0", "alpha-u", "skew"])
def test_reruns_are_identical(suite):
    a = json.dumps(run_suite(suite, T=2, seed=3).to_json(), sort_keys=True)
    b = json.dumps(run_suite(suite, T=2, seed=3).to_json(), sort_keys=True)
    assert a == b


def test_seed_changes_the_sample():
    a = run_suite("skew", seed=1).to_json()
    b = run_suite("skew", seed=2).to_json()
    assert a["cases"] == b["cases"]
    assert a["failures"] == b["failures"] == []


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
    assert "rationality" in SUITES and len(SUITES) == 11


def test_need0_report_lists_values():
    rep = run_suite("need0", T=2)
    assert rep.info["reduced_coefficient"] == {2: "1/2*u^-1"}
    labels = {f["case"] for f in rep.failures}
    # the only failing case is the comparison with the sign-flipped closed form
    assert labels == {"T=2 reduction equals -(T-1)/(2u)"}
