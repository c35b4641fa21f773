import random
from fractions import Fraction

import pytest
from hypothesis import settings

from hilbpoisson.charts import ChartPoint

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def chart_point(rng, k, zero_prob=0.3, bound=3, last_row_zero=False):
    rows = []
    for j in range(k + 1):
        row = []
        for _ in range(k):
            if (last_row_zero and j == k) or rng.random() < zero_prob:
                row.append(Fraction(0))
            else:
                row.append(Fraction(rng.randint(-bound, bound), rng.choice([1, 2, 3])))
        rows.append(row)
    return ChartPoint(k, rows)


@pytest.fixture
def rng():
    return random.Random(20240611)


# criterion number -> (name, passed), filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        name, passed = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if passed else 'FAIL'}  {name}")
