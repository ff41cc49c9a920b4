"""Shared pytest plumbing.

Tests marked `criterion(cid, title)` feed a per-criterion PASS/FAIL line
into the terminal summary, so the acceptance verdict is readable at a
glance. Several tests may share one criterion id; the criterion passes
only if all of them do.
"""

import pytest

_STATUS_RANK = {"PASS": 0, "SKIP": 1, "FAIL": 2}
_criteria: dict[str, dict] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "criterion(cid, title): tag a test as part of a numbered "
        "acceptance criterion",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    cid, title = marker.args
    entry = _criteria.setdefault(cid, {"title": title, "status": "PASS"})
    if report.failed:
        status = "FAIL"
    elif report.skipped:
        status = "SKIP"
    elif report.when == "call" and report.passed:
        status = "PASS"
    else:
        return
    if _STATUS_RANK[status] > _STATUS_RANK[entry["status"]]:
        entry["status"] = status


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_criteria):
        entry = _criteria[cid]
        terminalreporter.write_line(f"{cid} {entry['title']}: {entry['status']}")
