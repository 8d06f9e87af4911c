"""Acceptance gate: every criterion at its stated tolerance, one printed
pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines, or via
the CLI as `gcipw verify-all`.
"""

import pytest

from gcipw.verify import CHECKS

SEED = 20240801


@pytest.mark.parametrize("check_id", sorted(CHECKS))
def test_criterion(check_id):
    result = CHECKS[check_id](SEED)
    status = "PASS" if result["passed"] else "FAIL"
    print(f"\n{check_id}: {status} ({result['elapsed']:.1f}s)  {result['detail']}")
    assert result["passed"], result["detail"]
