import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kempelock import fixtures
from kempelock.generator import generate_all

EXTENDED = os.environ.get("KEMPELOCK_EXTENDED") == "1"
CORPORA = os.environ.get("KEMPELOCK_CORPORA")


def pytest_collection_modifyitems(config, items):
    if EXTENDED:
        return
    skip = pytest.mark.skip(reason="extended tier: set KEMPELOCK_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")
    config._acceptance = {}


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    # count each test once: its call phase, or the phase that failed or skipped it
    if report.when != "call" and report.passed:
        return
    num, text = crit
    entry = _config._acceptance.setdefault(num, {"text": text, "passed": 0, "failed": 0, "skipped": 0})
    entry[report.outcome] += 1


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = (mark.args[0], mark.args[1])


def pytest_sessionstart(session):
    global _config
    _config = session.config


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config._acceptance
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(store):
        e = store[num]
        if e["failed"]:
            verdict = "FAIL"
        elif e["passed"]:
            verdict = "PASS"
        else:
            verdict = "SKIP"
        detail = f"{e['passed']} passed"
        if e["failed"]:
            detail += f", {e['failed']} failed"
        if e["skipped"]:
            detail += f", {e['skipped']} skipped (extended tier)"
        terminalreporter.write_line(f"criterion {num}: {verdict} [{detail}] {e['text']}")


@pytest.fixture(scope="session")
def t12():
    return fixtures.t12()


@pytest.fixture(scope="session")
def ico():
    return fixtures.icosahedron()


@pytest.fixture(scope="session")
def octa():
    return fixtures.octahedron()


@pytest.fixture(scope="session")
def k4():
    return fixtures.k4()


@pytest.fixture(scope="session")
def small_triangulations():
    """Every triangulation of order 4..8, one per class."""
    return [t for n in range(4, 9) for t in generate_all(n)]


@pytest.fixture(scope="session")
def names():
    return fixtures.T12
