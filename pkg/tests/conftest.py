import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_criterion_" in report.nodeid:
        detail = dict(report.user_properties).get("detail", "")
        _CRITERIA.append((report.nodeid.rsplit("test_criterion_", 1)[1], report.outcome, detail))
    elif report.when == "setup" and report.failed and "test_criterion_" in report.nodeid:
        _CRITERIA.append((report.nodeid.rsplit("test_criterion_", 1)[1], "error", "setup failed"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in sorted(_CRITERIA, key=lambda c: int(c[0].split("_")[0])):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {name:<28} {verdict}  {detail}")
