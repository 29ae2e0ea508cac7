import pytest

from naphopf.verify import CheckResult, SuiteReport, run_suite, suite_names


def test_suite_names():
    names = suite_names()
    assert "all" in names
    assert set(names) >= {"poset", "mobius", "hopf", "main-theorem",
                          "ck-iso", "series", "projections"}


def test_all_suite_runs_and_passes_at_low_degree():
    report = run_suite("all", degree=2, seed=0)
    assert report.passed
    names = [c.name for c in report.checks]
    assert names == sorted(names)
    assert any(name.startswith("mobius:") for name in names)
    assert all(c.witness == "" for c in report.checks)


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_suite("nonsense")


def test_report_rendering_and_failure_semantics():
    report = SuiteReport("demo", [CheckResult("a fine check", True),
                                  CheckResult("a broken check", False, "why")],
                         elapsed_ms=3)
    assert not report.passed
    text = report.render_text()
    assert "[PASS] demo: a fine check" in text
    assert "[FAIL] demo: a broken check [why]" in text
    data = report.to_dict(include_elapsed=False)
    assert "elapsed_ms" not in data
    assert data["checks"][1]["witness"] == "why"


def test_reports_reproducible_across_runs():
    a = run_suite("series", degree=3, seed=5).to_dict(include_elapsed=False)
    b = run_suite("series", degree=3, seed=5).to_dict(include_elapsed=False)
    assert a == b
