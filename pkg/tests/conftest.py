"""Collects outcomes of tests tagged ``@pytest.mark.criterion(n, title)`` and
prints one PASS/FAIL line per acceptance criterion at the end of the run."""

import pytest

_results: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            n, title = m.args
            _results.setdefault(n, {"title": title, "ok": True, "seen": False})


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    entry = _results[m.args[0]]
    if rep.when == "call":
        entry["seen"] = True
    if rep.failed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        e = _results[n]
        status = "PASS" if e["ok"] and e["seen"] else ("FAIL" if e["seen"] else "NOT RUN")
        terminalreporter.write_line(f"criterion {n:2d} {status:7s} {e['title']}")
