"""Collects acceptance outcomes and prints one line per criterion at the end."""

import pytest

_RESULTS = pytest.StashKey[dict]()
_NOTES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_RESULTS] = {}
    config.stash[_NOTES] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    number, title = mark.args
    results = item.config.stash[_RESULTS]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        results[number] = (title, status, round(call.duration, 2))


@pytest.fixture
def acceptance_note(request):
    """Append a line to the end-of-run acceptance summary."""
    notes = request.config.stash[_NOTES]
    return notes.append


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash[_RESULTS]
    if not results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(results, key=int):
        title, status, seconds = results[number]
        tr.write_line(f"criterion {number}: {status}  {title} ({seconds:.2f}s)")
    for line in config.stash[_NOTES]:
        tr.write_line(f"  {line}")
