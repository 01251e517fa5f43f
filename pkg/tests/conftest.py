from fractions import Fraction as F

import pytest

from marketeff import DeterministicPattern, ScenarioPattern


@pytest.fixture
def fig1():
    return DeterministicPattern((-1, 1, -1, 1, -1, 1, 2))


@pytest.fixture
def fig2():
    return DeterministicPattern((-2, 2, -2, 2, -2, 2, 3))


@pytest.fixture
def faircoin():
    return ScenarioPattern(((F(1, 2), (1,)), (F(1, 2), (-1,))))


acceptance_lines = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[acceptance_lines] = []


@pytest.fixture
def verdict(request, capsys):
    """Print and record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        request.config.stash[acceptance_lines].append(line)
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(acceptance_lines, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
