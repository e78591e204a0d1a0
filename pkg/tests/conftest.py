import contextlib
import time

import pytest

_LINES: list[tuple[int, str, str]] = []


class Report:
    """Collects one pass/fail line per acceptance criterion."""

    @contextlib.contextmanager
    def check(self, number: int, title: str):
        detail: dict[str, str] = {"text": ""}
        t0 = time.perf_counter()
        try:
            yield detail
        except BaseException:
            _LINES.append((number, "FAIL", f"{title}: {detail['text']} ({time.perf_counter() - t0:.2f}s)"))
            raise
        _LINES.append((number, "PASS", f"{title}: {detail['text']} ({time.perf_counter() - t0:.2f}s)"))


@pytest.fixture(scope="session")
def report():
    return Report()


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, mark, text in sorted(_LINES, key=lambda x: x[0]):
        terminalreporter.write_line(f"[{mark}] {number:>2}. {text}")
