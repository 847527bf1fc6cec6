"""End-to-end acceptance: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the whole file takes
about 15 minutes, most of it in criterion 8.
"""
import pytest

from sctree.acceptance import CRITERIA, run_criterion

# wall-clock budgets in seconds, where one is stated
BUDGET = {1: 60, 2: 120, 5: 30, 6: 300, 8: 900, 10: 60}


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = run_criterion(number)
    budget = BUDGET.get(number)
    in_time = budget is None or result.seconds < budget
    ok = result.passed and in_time
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({result.title}, {result.seconds:.1f} s)")
        for c in result.checks:
            print(f"    {'ok  ' if c.passed else 'FAIL'} {c.name}")
        if not in_time:
            print(f"    FAIL over budget of {budget} s")
    assert result.passed, [c.to_json() for c in result.checks if not c.passed]
    assert in_time, f"{result.seconds:.1f} s exceeds {budget} s"
