import random

import pytest

from acceptance_log import LINES


@pytest.fixture
def rng():
    return random.Random(20171)


def pytest_terminal_summary(terminalreporter):
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
