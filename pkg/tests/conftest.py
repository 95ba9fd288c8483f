import re

import pytest

CRITERIA = range(1, 14)

# criterion number -> list of detail strings, filled in by the acceptance tests
_details: dict[int, list[str]] = {}
# criterion number -> list of outcomes ("passed", "failed", "skipped")
_outcomes: dict[int, list[str]] = {}

_CRIT_NAME = re.compile(r"test_criterion_(\d+)")


def pytest_addoption(parser):
    parser.addoption("--long-running", action="store_true", default=False,
                     help="run the hours-long acceptance tier")


def pytest_configure(config):
    config.addinivalue_line("markers", "long_running: needs --long-running")
    config.addinivalue_line("markers", "slow: takes minutes")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long-running"):
        return
    skip = pytest.mark.skip(reason="needs --long-running (expect hours)")
    for item in items:
        if "long_running" in item.keywords:
            item.add_marker(skip)


class Acceptance:
    def record(self, n: int, text: str) -> None:
        _details.setdefault(n, []).append(text)


@pytest.fixture
def acceptance():
    return Acceptance()


def pytest_runtest_logreport(report):
    mt = _CRIT_NAME.search(report.nodeid)
    if not mt:
        return
    n = int(mt.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes.setdefault(n, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in CRITERIA:
        outs = _outcomes.get(n)
        if not outs:
            status = "NOT RUN"
        elif "failed" in outs:
            status = "FAIL"
        elif all(o == "skipped" for o in outs):
            status = "SKIP"
        else:
            status = "PASS"
        detail = "; ".join(_details.get(n, []))
        tr.write_line(f"criterion {n:2d}: {status:7s} {detail}")
