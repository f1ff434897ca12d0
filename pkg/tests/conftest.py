"""Collects the acceptance-marked tests into a one-line-per-criterion summary."""

import pytest

_results = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    info = dict(report.user_properties).get("acceptance")
    if info is None:
        return
    number, title = info
    detail = dict(report.user_properties).get("detail", "")
    _results[number] = (title, report.outcome == "passed", detail)


@pytest.fixture
def criterion(request, record_property):
    """Registers the test's acceptance marker and returns a detail recorder."""
    mark = request.node.get_closest_marker("acceptance")
    record_property("acceptance", mark.args)
    notes = []

    def note(text):
        notes.append(text)
        # properties are read back after the call, so keep the latest joined text
        request.node.user_properties[:] = [p for p in request.node.user_properties if p[0] != "detail"]
        request.node.user_properties.append(("detail", "; ".join(notes)))

    return note


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        title, ok, detail = _results[number]
        tr.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}")
    passed = sum(ok for _, ok, _ in _results.values())
    tr.write_line(f"{passed}/{len(_results)} acceptance criteria passed")
