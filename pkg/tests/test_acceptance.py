"""Acceptance criteria 1-7; one PASS/FAIL line per criterion.

Run under pytest (lines appear in the "acceptance criteria" summary section) or
directly with ``python3 tests/test_acceptance.py``.
"""

import os
import sys

import pytest

from periodscope.verification import (
    DEFAULT_DIGITS,
    check_ball_model,
    check_curve_pf,
    check_dwork,
    check_genus_table,
    check_hodge_numbers,
    check_monodromy,
    check_no_mum,
)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # executed as a script from elsewhere
    ACCEPTANCE_LINES = []

DIGITS = int(os.environ.get("PERIODSCOPE_DIGITS") or DEFAULT_DIGITS)

CHECKS = {
    1: check_curve_pf,
    2: check_no_mum,
    3: lambda: check_monodromy(DIGITS),
    4: lambda: check_dwork(DIGITS),
    5: check_genus_table,
    6: check_hodge_numbers,
    7: check_ball_model,
}


@pytest.mark.parametrize("number", sorted(CHECKS))
def test_criterion(number):
    result = CHECKS[number]()
    line = result.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.passed, line


if __name__ == "__main__":
    failed = 0
    for n in sorted(CHECKS):
        r = CHECKS[n]()
        print(r.line())
        failed += not r.passed
    sys.exit(1 if failed else 0)
