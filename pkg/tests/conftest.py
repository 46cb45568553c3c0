"""Shared fixtures and the per-criterion summary printed after the acceptance run."""
from __future__ import annotations

import pytest

_RESULTS: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def _criterion(item):
    mark = item.get_closest_marker("criterion")
    return (mark.args[0], mark.args[1]) if mark else None


@pytest.fixture
def record(request):
    """Attach measured values to the acceptance summary line of this test."""
    crit = _criterion(request.node)
    details: list[str] = []
    if crit:
        _RESULTS.setdefault(crit[0], {"title": crit[1], "ok": None, "details": details})
        _RESULTS[crit[0]]["details"] = details

    def add(name: str, value) -> None:
        details.append(f"{name}={value}")

    return add


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    crit = _criterion(item)
    if crit is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    entry = _RESULTS.setdefault(crit[0], {"title": crit[1], "ok": None, "details": []})
    entry["ok"] = rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        entry = _RESULTS[num]
        status = "PASS" if entry["ok"] else "FAIL"
        extra = ("  [" + ", ".join(entry["details"]) + "]") if entry["details"] else ""
        terminalreporter.write_line(f"criterion {num:2d} {status}  {entry['title']}{extra}")
