"""One test per acceptance criterion, each within its runtime limit."""
from __future__ import annotations

import pytest

from moritakit.acceptance import CHECKS, LIMITS, run_check


@pytest.mark.parametrize("number", sorted(CHECKS))
def test_criterion(number, capsys):
    r = run_check(number, seed=0)
    with capsys.disabled():
        print(f"\n{r.line()}  ({r.seconds:.2f}s, limit {LIMITS[number]}s)")
    assert r.passed, r.detail
    assert r.within_time, f"{r.seconds:.1f}s exceeds {LIMITS[number]}s"


@pytest.mark.parametrize("number", [1, 3, 4, 8, 12, 13])
def test_randomized_criteria_hold_at_another_seed(number):
    r = run_check(number, seed=1)
    assert r.passed, r.detail


def test_summary_depends_only_on_the_seed():
    from moritakit.acceptance import run_suite, summary
    from moritakit.io import dumps
    a = dumps(summary(run_suite("core", 3), "core", 3))
    b = dumps(summary(run_suite("core", 3), "core", 3))
    assert a == b
