"""Acceptance gate: every criterion runs at full strength, one line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
PASS lines; the same suite backs the CLI's ``selfcheck`` command.
"""

import pytest

from legcable.selfcheck import ALL_CHECKS, check_oracle_agreement

ORACLE_SAMPLES = 500


@pytest.mark.parametrize("check", ALL_CHECKS, ids=lambda c: c.__name__)
def test_acceptance(check):
    if check is check_oracle_agreement:
        result = check(ORACLE_SAMPLES)
    else:
        result = check()
    status = "PASS" if result.passed else "FAIL"
    print(f"{status}  {result.name}: {result.detail}")
    assert result.passed, f"{result.name}: {result.detail}"
