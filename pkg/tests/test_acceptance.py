"""The acceptance table as a pytest module: one test per criterion.

Each criterion is an exact (zero-tolerance) check; the stated runtime
budgets are asserted as well.  Run with -s to see the per-criterion lines.
"""

import time

import pytest

from dybax import acceptance

BUDGET_SECONDS = {
    1: 1, 2: 5, 3: 120, 4: 300, 5: 600, 6: 60, 7: 120,
    8: 120, 9: 60, 10: 30, 11: 300, 12: 600, 13: 600, 14: 60,
}


@pytest.mark.parametrize("name,fn", acceptance.CRITERIA,
                         ids=[name for name, _ in acceptance.CRITERIA])
def test_criterion(name, fn):
    number = int(name.split()[0])
    start = time.time()
    ok = fn()
    elapsed = time.time() - start
    print(f"{'PASS' if ok else 'FAIL'}  criterion {name}  ({elapsed:.1f}s)")
    assert ok, f"criterion {name} failed"
    assert elapsed < BUDGET_SECONDS[number], \
        f"criterion {name} exceeded its {BUDGET_SECONDS[number]}s budget"
