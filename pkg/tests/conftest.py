import time

import pytest

_KEY = pytest.StashKey[list]()


class Criterion:
    """Times one acceptance criterion and records a PASS/FAIL line."""

    def __init__(self, lines):
        self.lines = lines

    def __call__(self, number, title, check, limit):
        start = time.perf_counter()
        try:
            detail = check()
            ok, why = True, detail or ""
        except AssertionError as exc:
            ok, why = False, str(exc).splitlines()[0] if str(exc) else "assertion failed"
        elapsed = time.perf_counter() - start
        if ok and elapsed >= limit:
            ok, why = False, f"took {elapsed:.2f}s, limit {limit}s"
        line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} ({elapsed:.2f}s) {why}".rstrip()
        self.lines.append(line)
        print(line)
        assert ok, line


@pytest.fixture
def criterion(request):
    return Criterion(request.config.stash.setdefault(_KEY, []))


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
