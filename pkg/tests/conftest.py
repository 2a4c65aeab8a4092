from fractions import Fraction

import pytest
from hypothesis import settings

from mophyp.weights import validate_params

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

GRID = (
    ("1", "2", "3", "4"),
    ("1/2", "3/2", "2", "5/2"),
    ("4/3", "5/3", "2", "5/2"),
    ("1", "1", "2", "5/2"),
)


def grid_params():
    return [validate_params(*q) for q in GRID]


@pytest.fixture(params=GRID, ids=lambda q: ",".join(q))
def exact_params(request):
    return validate_params(*request.param)


@pytest.fixture(params=GRID, ids=lambda q: ",".join(q))
def float_params(request):
    return validate_params(*(float(Fraction(v)) for v in request.param))


# ---------------------------------------------------------------- acceptance report

CRITERIA: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        CRITERIA[number] = (title, "PASS" if rep.passed else "FAIL", rep.duration)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        title, status, duration = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:>2} {status}  {title}  ({duration:.1f} s)")
