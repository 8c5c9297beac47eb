import pytest

from mixnum.core import pair_from_counts


@pytest.fixture
def pair_2_8():
    return pair_from_counts(2, 8)


@pytest.fixture
def pair_2_16():
    return pair_from_counts(2, 16)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
