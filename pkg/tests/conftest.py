import random

import pytest

from qriver.forms import BinaryQuadraticForm


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture
def disc24():
    """x^2 - 2xy - 5y^2."""
    return BinaryQuadraticForm(1, -2, -5)


@pytest.fixture
def disc12():
    """11x^2 - 10xy + 2y^2."""
    return BinaryQuadraticForm(11, -10, 2)


@pytest.fixture
def golden():
    """x^2 + xy - y^2."""
    return BinaryQuadraticForm(1, 1, -1)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
