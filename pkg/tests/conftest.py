import pytest

from passivity_center.model import StateSpaceModel

ACCEPTANCE_LINES = []


@pytest.fixture
def scalar_c():
    return StateSpaceModel(-1.0, 1.0, 1.0, 2.0)


@pytest.fixture
def scalar_d():
    return StateSpaceModel(0.5, 1.0, 0.25, 1.0, "discrete")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
