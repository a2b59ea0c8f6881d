import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from frobmeas import QQ, PrimeField, group_algebra, matrix_algebra, named_group  # noqa: E402

# criterion number -> (title, [outcomes])
_CRITERIA = {}


def kG(ctx, name):
    return group_algebra(ctx, named_group(name))


def Mn(ctx, n):
    return matrix_algebra(ctx, n)


@pytest.fixture
def F2():
    return PrimeField(2)


@pytest.fixture
def F3():
    return PrimeField(3)


@pytest.fixture
def F5():
    return PrimeField(5)


@pytest.fixture
def F7():
    return PrimeField(7)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        n, title = mark.args
        status = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
        _CRITERIA.setdefault(n, (title, []))[1].append((item.name, status))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, results = _CRITERIA[n]
        statuses = {s for _, s in results}
        overall = "FAIL" if "FAIL" in statuses else ("PASS" if "PASS" in statuses else "SKIP")
        terminalreporter.write_line(f"[{overall}] criterion {n}: {title}")
        for name, s in results:
            if s != "PASS":
                terminalreporter.write_line(f"        {s}: {name}")
