import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from resgame import Coalition, worth_by_size, worth_from_table  # noqa: E402

ACCEPTANCE_LINES = []


def zoogle_table(grand=2.5):
    """Explicit seven-entry table of the three-service example."""
    entries = {}
    for mask in range(1, 8):
        size = bin(mask).count("1")
        entries[Coalition(mask)] = {1: 0.0, 2: 2.0, 3: grand}[size]
    return worth_from_table(3, entries)


@pytest.fixture
def zoogle():
    return zoogle_table()


@pytest.fixture
def zoogle_loyal():
    return zoogle_table(3.0)


@pytest.fixture
def zoogle_sized():
    return worth_by_size(3, [0, 2, 2.5])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
