"""Shared test plumbing: the acceptance-criterion reporter.

Acceptance tests call record() before asserting, so the terminal summary
always carries one PASS/FAIL line per criterion, including the failing ones.
"""

from __future__ import annotations

_CRITERION_RESULTS: list[tuple[int, bool, str, str]] = []


def record(num: int, label: str, ok: bool, detail: str = "") -> None:
    _CRITERION_RESULTS.append((num, ok, label, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num, ok, label, detail in sorted(_CRITERION_RESULTS):
        status = "PASS" if ok else "FAIL"
        line = f"CRITERION {num:02d} {status} - {label}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
