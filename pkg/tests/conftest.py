import numpy as np
import pytest

_ACCEPTANCE = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    # the call phase decides, but a failed setup or teardown also counts
    if marker is None or (report.when != "call" and not report.failed):
        return
    label = marker.args[0]
    _ACCEPTANCE[label] = _ACCEPTANCE.get(label, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: (len(s.split()[0]), s)):
        terminalreporter.write_line(f"{'PASS' if _ACCEPTANCE[label] else 'FAIL'}  {label}")
