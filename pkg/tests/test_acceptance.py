"""The numbered acceptance criteria, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line with the measured
error, the threshold and what the criterion validates.  Thresholds are the
pinned defaults of :mod:`gkz.acceptance`; nothing is relaxed here.
"""

import pytest

from gkz.acceptance import CRITERIA, Check, run_suite, seed_from_env

NUMBERED = list(CRITERIA)  # criteria 1..11 in order


@pytest.fixture(scope="module")
def suite():
    checks = run_suite(seed=seed_from_env(), jobs=1)
    return dict(zip(NUMBERED, checks))


@pytest.mark.parametrize("number,name", list(enumerate(NUMBERED, start=1)))
def test_criterion(suite, capsys, number, name):
    check: Check = suite[name]
    with capsys.disabled():
        print(f"\ncriterion {number:2d} {check.line()}  ({check.seconds:.2f} s)")
    assert check.status == "Pass", f"criterion {number} failed: {check.details}"
