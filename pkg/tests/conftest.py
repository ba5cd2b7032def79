import pytest

_CRITERIA: list[str] = []


@pytest.fixture(scope="session")
def report_criterion():
    def record(number: int, title: str, ok: bool, detail: str) -> None:
        _CRITERIA.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
