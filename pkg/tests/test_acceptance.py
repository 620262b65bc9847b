"""Acceptance gate: every criterion from the build contract, one test per
criterion.  These wrap the exact functions the ``selftest`` CLI command
runs, so a green suite and a passing ``chromarect selftest`` certify the
same thing.  Run with ``-s`` (or read failures) for the detail lines.
"""

import pytest

from chromarect.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize(
    "number",
    [c.number for c in CRITERIA],
    ids=[f"criterion_{c.number:02d}" for c in CRITERIA],
)
def test_criterion(number):
    result = run_criterion(number)
    print(result.line())
    assert result.passed, result.line()
