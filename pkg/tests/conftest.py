import numpy as np
import pytest

from netextremes import PriceSeries

_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        _CRITERIA.append((marker.args[0], status, marker.args[1]))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, text in sorted(_CRITERIA):
        terminalreporter.write_line(f"[{status}] criterion {number}: {text}")


def random_walk(rng, n, scale=0.01):
    return PriceSeries.from_log_values(np.cumsum(rng.normal(0.0, scale, n)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
