import contextlib
import time

import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Context manager that records one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def record(label: str):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            line = f"[FAIL] {label}: {type(exc).__name__}: {exc}".splitlines()[0]
            _ACCEPTANCE_LINES.append(line)
            print(line)
            raise
        line = f"[PASS] {label} ({time.perf_counter() - start:.2f}s)"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
