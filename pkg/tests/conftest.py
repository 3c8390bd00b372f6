import pytest

from noncrossing.fixtures import DART, convex_polygon, holed_fixtures, nonconvex_fixtures
from noncrossing.region import validate


@pytest.fixture
def square():
    return validate([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def dart():
    return validate(DART)


@pytest.fixture(scope="session")
def nonconvex():
    return nonconvex_fixtures()


@pytest.fixture(scope="session")
def holed():
    return holed_fixtures()


@pytest.fixture
def pentagon():
    return convex_polygon(5)


@pytest.fixture
def hexagon():
    return convex_polygon(6)


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): acceptance criterion number n")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    _ACCEPTANCE[marker.args[0]] = (item.name, call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        name, ok = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {name}")
