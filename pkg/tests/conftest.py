"""Per-criterion PASS/FAIL lines for the acceptance suite."""
import pytest

_OUTCOMES = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when == "teardown" and report.passed:
        return
    if report.when == "call" or report.failed or report.skipped:
        key = marker.args
        prev = _OUTCOMES.get(key, "PASS")
        _OUTCOMES[key] = prev if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), status in sorted(_OUTCOMES.items()):
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
