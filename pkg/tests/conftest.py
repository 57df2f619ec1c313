import sys
from dataclasses import dataclass
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@dataclass
class CriterionLine:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    def __str__(self):
        tag = "PASS" if self.passed else "FAIL"
        return (f"[{tag}] criterion {self.number}: {self.title} :: {self.detail} "
                f"({self.seconds:.2f}s, limit {self.limit:g}s)")


_LINES: list[CriterionLine] = []


@pytest.fixture
def criterion():
    """Record one acceptance line; returns the line so the test can assert on it."""
    def record(number, title, ok, detail, seconds, limit):
        line = CriterionLine(number, title, ok and seconds < limit, detail, seconds, limit)
        _LINES.append(line)
        print(line)
        return line
    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_LINES, key=lambda x: x.number):
        terminalreporter.write_line(str(line))
