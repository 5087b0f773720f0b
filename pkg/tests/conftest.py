import pytest

from ecprbg.curve import Curve, default_spec

_acceptance: dict[int, dict] = {}


@pytest.fixture(scope="session")
def e29():
    """y^2 = x^3 + x + 4 over F_29."""
    return Curve(29, 1, 4)


@pytest.fixture(scope="session")
def e29_points(e29):
    return e29.enumerate_points()


@pytest.fixture(scope="session")
def spec503():
    return default_spec()


def pytest_runtest_logreport(report):
    marker = getattr(report, "acceptance", None)
    if marker is None:
        return
    number, title = marker
    entry = _acceptance.setdefault(number, {"title": title, "outcome": "passed"})
    if report.failed:
        entry["outcome"] = "failed"
    elif report.skipped and entry["outcome"] == "passed" and report.when == "setup":
        entry["outcome"] = "skipped"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        report.acceptance = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        entry = _acceptance[number]
        verdict = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[entry["outcome"]]
        terminalreporter.write_line(f"[{verdict}] criterion {number}: {entry['title']}")
