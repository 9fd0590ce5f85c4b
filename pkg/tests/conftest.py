import time
from contextlib import contextmanager

import pytest

_RESULTS = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_RESULTS] = []


class _Check:
    def __init__(self):
        self.detail = ""


@pytest.fixture
def criterion(request):
    """Time a criterion body against its bound and record a PASS/FAIL line."""
    results = request.config.stash[_RESULTS]

    @contextmanager
    def run(number, title, seconds):
        check = _Check()
        t0 = time.perf_counter()
        try:
            yield check
        except BaseException as exc:
            elapsed = time.perf_counter() - t0
            msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            results.append((number, False, f"{title} ({elapsed:.2f}s / {seconds}s): {msg}"))
            raise
        elapsed = time.perf_counter() - t0
        ok = elapsed < seconds
        extra = f"; {check.detail}" if check.detail else ""
        results.append((number, ok, f"{title} ({elapsed:.2f}s / {seconds}s){extra}"))
        assert ok, f"criterion {number} took {elapsed:.2f}s, bound {seconds}s"

    return run


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_RESULTS, [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, text in sorted(results):
        terminalreporter.write_line(f"AC{number} {'PASS' if ok else 'FAIL'}  {text}")
