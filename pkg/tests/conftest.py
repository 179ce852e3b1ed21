import os
import random

import pytest
from hypothesis import HealthCheck, settings

from waringeq.exactla import Matrix, det
from waringeq.parsing import parse

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def random_invertible(rng: random.Random, n: int, lo: int = -5, hi: int = 5) -> list[list[int]]:
    while True:
        a = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]
        if det(Matrix(a)) != 0:
            return a


@pytest.fixture
def two_cubes_poly():
    return parse("2*x1^3 + 12*x1*x2^2")


_CRITERIA = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """``record(number, ok, detail)`` prints a PASS/FAIL line and asserts ``ok``."""
    lines = request.config.stash.setdefault(_CRITERIA, [])

    def record(number: int, ok: bool, detail: str):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        print(line)
        lines.append((number, line))
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_CRITERIA, [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
