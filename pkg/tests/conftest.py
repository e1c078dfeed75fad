import random

import pytest


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240601, help="seed for randomized tests")


@pytest.fixture
def rng(request):
    return random.Random(request.config.getoption("--seed"))


def _lines(config):
    if not hasattr(config, "_acceptance_lines"):
        config._acceptance_lines = []
    return config._acceptance_lines


@pytest.fixture
def verdict_line(request):
    """Print and record one pass/fail line for an acceptance criterion."""

    def emit(number, title, ok, detail=""):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
        print(line)
        _lines(request.config).append(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter, config):
    lines = _lines(config)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
