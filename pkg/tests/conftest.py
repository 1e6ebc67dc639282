import pytest

_LINES = {}


@pytest.fixture
def record():
    """Store one summary line per acceptance criterion."""
    def _record(number, ok, detail):
        _LINES[number] = f"criterion {number:>2} [{'PASS' if ok else 'FAIL'}] {detail}"
        print(_LINES[number])
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_LINES):
        terminalreporter.write_line(_LINES[number])
