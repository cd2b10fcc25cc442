import pytest

# criterion number -> (passed, detail), filled by the acceptance tests
ACCEPTANCE_RESULTS = {}


def record_criterion(number: int, title: str, passed: bool, detail: str):
    ACCEPTANCE_RESULTS[number] = (title, passed, detail)
    print(f"criterion {number} {'PASS' if passed else 'FAIL'}: {title} ({detail})")


@pytest.fixture
def criterion():
    return record_criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, passed, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number} {'PASS' if passed else 'FAIL'}: {title} ({detail})")
