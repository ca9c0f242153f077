import time
from contextlib import contextmanager

import pytest

# acceptance lines collected during the run, printed in the terminal summary
ACCEPTANCE: dict[int, str] = {}


@contextmanager
def criterion(k: int, title: str, limit: float):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        ACCEPTANCE[k] = f"FAIL criterion {k}: {title} ({type(exc).__name__}: {exc})"
        raise
    elapsed = time.perf_counter() - t0
    if elapsed >= limit:
        ACCEPTANCE[k] = f"FAIL criterion {k}: {title} (took {elapsed:.2f}s, limit {limit:g}s)"
        pytest.fail(f"criterion {k} exceeded {limit}s: {elapsed:.2f}s")
    ACCEPTANCE[k] = f"PASS criterion {k}: {title} ({elapsed:.2f}s)"
    print(ACCEPTANCE[k])


@pytest.fixture
def accept():
    return criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
