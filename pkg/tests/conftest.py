import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from defreq.data import path as data_path  # noqa: E402
from defreq.dsl import parse_document  # noqa: E402


@pytest.fixture
def corpus():
    def load(name):
        p = data_path(name)
        return parse_document(p.read_text(encoding="utf-8"), source=name)

    return load


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when == "teardown":
        return
    n, title = marker.args
    failed = report.failed or (report.when == "setup" and not report.passed)
    previous = item.config._criteria.get(n, (title, True))
    item.config._criteria[n] = (title, previous[1] and not failed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    criteria = getattr(config, "_criteria", {})
    if not criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(criteria):
        title, ok = criteria[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
