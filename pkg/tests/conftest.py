import pytest

from densediv.arithmetic import ThetaRule, members

X_TOP = 10**8


@pytest.fixture(scope="session")
def dense2_pool():
    """D(10^8, 2), enumerated once for the whole session."""
    return members(ThetaRule.dense(2), X_TOP)


@pytest.fixture(scope="session")
def practical_pool():
    return members(ThetaRule.practical(), X_TOP)


@pytest.fixture(scope="session")
def pools(dense2_pool, practical_pool):
    return {"dense": (ThetaRule.dense(2), dense2_pool), "practical": (ThetaRule.practical(), practical_pool)}


# --- acceptance summary: one PASS/FAIL line per criterion -------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        details = "; ".join(f"{k}={v}" for k, v in item.user_properties)
        _CRITERIA[number] = (title, "PASS" if report.passed else "FAIL", details)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, verdict, details = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}" + (f"  [{details}]" if details else ""))
