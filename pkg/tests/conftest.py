import re

from hypothesis import settings

settings.register_profile("repo", deadline=None)
settings.load_profile("repo")

_outcomes: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m or report.when != "call" and not (report.when == "setup" and report.failed):
        return
    _outcomes[int(m.group(1))] = ("PASS" if report.passed else "FAIL", m.group(2).replace("_", " "))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_outcomes):
        status, name = _outcomes[k]
        terminalreporter.write_line(f"{status} {k:2d} {name}")
