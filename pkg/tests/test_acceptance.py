"""Runs every reproduction check at its stated tolerance, one test per criterion.

A PASS/FAIL line per criterion is printed at the end of the session (see
conftest.py) and also during the test when run with ``-s``.
"""

import json

import pytest

from quandlehom.verify import CHECKS, RunReport, run_check, run_checks

ACCEPTANCE_LINES: list[str] = []

# wall-clock limits stated for each criterion, in seconds
BUDGET = {1: 1, 2: 1, 3: 5, 4: 30, 5: 30, 6: 900, 7: 60, 8: 60, 9: 120, 10: 1,
          11: 1, 12: 5, 13: 120, 14: 10, 15: 300}


def _param(spec):
    marks = [pytest.mark.slow] if spec.slow else []
    return pytest.param(spec, id=f"criterion_{spec.id:02d}", marks=marks)


@pytest.mark.parametrize("spec", [_param(s) for s in CHECKS])
def test_criterion(spec):
    result = run_check(spec, "all")
    status = "PASS" if result.passed else "FAIL"
    line = f"[{status}] criterion {spec.id:2d} {spec.name}: {result.seconds:.2f}s"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.error is None, result.error
    assert result.computed == result.expected
    assert result.passed
    assert result.seconds < BUDGET[spec.id]


def test_fast_scope_report_round_trips():
    report = run_checks("fast", ids={2, 4, 10, 12})
    assert [c.id for c in report.checks] == [2, 4, 10]
    data = json.loads(json.dumps(report.to_json()))
    again = RunReport.from_json(data)
    assert again.to_json() == report.to_json() and again.passed
