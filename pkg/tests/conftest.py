from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

# filled by test_acceptance; printed once at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
