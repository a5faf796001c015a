import os

import pytest
from hypothesis import HealthCheck, settings

from strategies import SMALL_ALGEBRAS

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(params=SMALL_ALGEBRAS, ids=str)
def algebra(request):
    return request.param



# acceptance summary: criterion -> {nodeid: passed?}
_CRITERIA: dict[int, dict[str, bool | None]] = {}
_TITLES: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, title): acceptance criterion k")


def pytest_collection_finish(session):
    for item in session.items:
        mark = item.get_closest_marker("criterion")
        if mark is None:
            continue
        k, title = mark.args
        _CRITERIA.setdefault(k, {})[item.nodeid] = None
        titles = _TITLES.setdefault(k, [])
        if title not in titles:
            titles.append(title)


def pytest_runtest_logreport(report):
    for outcomes in _CRITERIA.values():
        if report.nodeid in outcomes:
            failed = report.failed or (report.when == "call" and report.skipped)
            if failed:
                outcomes[report.nodeid] = False
            elif report.when == "call" and outcomes[report.nodeid] is None:
                outcomes[report.nodeid] = True


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        outcomes = _CRITERIA[k].values()
        if all(v is True for v in outcomes):
            status = "PASS"
        elif any(v is False for v in outcomes):
            status = "FAIL"
        else:
            status = "NOT RUN"
        done = sum(v is True for v in outcomes)
        tr.write_line(f"criterion {k}: {status}  ({done}/{len(outcomes)} tests)  "
                      + "; ".join(_TITLES[k]))
