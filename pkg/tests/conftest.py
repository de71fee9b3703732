import pytest

from lineconf import catalog


@pytest.fixture(scope="session")
def q4():
    return catalog.quadric_configuration(2)


@pytest.fixture(scope="session")
def q6():
    return catalog.quadric_configuration(3)


@pytest.fixture(scope="session")
def q8():
    return catalog.quadric_configuration(4)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
