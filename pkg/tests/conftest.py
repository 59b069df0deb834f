from __future__ import annotations

import pytest

from spernerlab.subdivision import subdivision_sequence

_CRITERIA: dict[str, tuple[bool, str]] = {}


def record_criterion(name: str, passed: bool, detail: str = "") -> None:
    _CRITERIA[name] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: int(s.split()[0])):
        passed, detail = _CRITERIA[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {name}  {detail}")


_BARY = {}


def bary(n: int, k: int):
    if (n, k) not in _BARY:
        _BARY[n, k] = subdivision_sequence(n, "barycentric", k).complex
    return _BARY[n, k]


@pytest.fixture
def bary_complex():
    return bary
