"""Acceptance criteria, one test per criterion at its stated time limit.

Each test prints a single PASS/FAIL line (visible even under output
capture) and then asserts the criterion passed.  The same lines are
produced by ``ctdesign verify``.
"""
from __future__ import annotations

import pytest

from ctdesign import reproduce

NUMBERS = [c[0] for c in reproduce.CRITERIA]


@pytest.mark.parametrize("number", NUMBERS, ids=[f"criterion_{n:02d}" for n in NUMBERS])
def test_criterion(number, capsys):
    result = reproduce.run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
        if result.status != reproduce.PASS:
            for check in result.checks:
                if not check.ok:
                    print(f"    failed check: {check.label}: {check.detail}")
            if result.error:
                print(f"    error: {result.error}")
    assert result.status == reproduce.PASS, result.report()
