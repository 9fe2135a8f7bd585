import random

import pytest

from g2replab.scalar import GF, QQ

PRIMES = (5, 7, 11, 13)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(params=(QQ,) + tuple(GF(p) for p in PRIMES), ids=lambda F: repr(F))
def field(request):
    return request.param


def pytest_configure(config):
    config.acceptance_lines = {}


@pytest.fixture
def criterion(request):
    """Record one pass/fail line for an acceptance criterion."""
    def record(n, ok, detail):
        request.config.acceptance_lines[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(request.config.acceptance_lines[n])
        return ok
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
