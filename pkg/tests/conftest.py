import pytest

from pg4track.construct import build_track

ADMISSIBLE = [5, 7, 17, 19, 29, 31, 41, 43]

_acceptance_lines: list[str] = []


@pytest.fixture
def record():
    def _record(criterion: str, ok: bool, detail: str = "") -> None:
        _acceptance_lines.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")

    return _record


@pytest.fixture(scope="session")
def tracks():
    cache = {}

    def get(q, force=False):
        if (q, force) not in cache:
            cache[q, force] = build_track(q, force=force)
        return cache[q, force]

    return get


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
