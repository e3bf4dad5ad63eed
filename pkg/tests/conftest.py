"""Suite-wide hooks: run acceptance criteria last and summarize them."""

from __future__ import annotations

import time

_SESSION_START = time.perf_counter()
_ACCEPTANCE_RESULTS: dict[str, str] = {}


def session_elapsed() -> float:
    return time.perf_counter() - _SESSION_START


def pytest_collection_modifyitems(config, items):
    acceptance = [it for it in items if it.get_closest_marker("acceptance")]
    rest = [it for it in items if not it.get_closest_marker("acceptance")]
    items[:] = rest + acceptance


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    if "acceptance" in getattr(report, "keywords", {}):
        _ACCEPTANCE_RESULTS[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_ACCEPTANCE_RESULTS):
        outcome = _ACCEPTANCE_RESULTS[nodeid]
        label = nodeid.split("::")[-1]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {label}")
    terminalreporter.write_line(f"suite wall time: {session_elapsed():.1f} s")
