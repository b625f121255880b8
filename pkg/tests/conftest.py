"""Shared pytest wiring: the acceptance-criterion scoreboard.

Tests tagged with @pytest.mark.criterion("...") get one PASS/FAIL line each
in a terminal section after the run, so the acceptance gate is readable at a
glance without grepping the dot output.
"""

from __future__ import annotations

import pytest

_SCOREBOARD: list[tuple[str, str]] = []


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(name): acceptance criterion shown on the scoreboard"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    # record on the call phase; a setup/teardown crash also counts as a failure
    if report.when == "call" or (report.when != "call" and report.failed):
        _SCOREBOARD.append((marker.args[0], report.outcome))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _SCOREBOARD:
        return
    # parametrized criteria report once: every instance must pass
    verdicts: dict[str, bool] = {}
    for name, outcome in _SCOREBOARD:
        verdicts[name] = verdicts.get(name, True) and outcome == "passed"
    terminalreporter.section("acceptance criteria")
    for name, ok in verdicts.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
