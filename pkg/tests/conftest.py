import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("numeric", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("numeric")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_CRITERIA = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1][len("test_criterion_"):]
        num = int(name.split("_")[0])
        label = name.split("[")[0][len(str(num)) + 1:]
        ok, dt, labels = _CRITERIA.get(num, (True, 0.0, []))
        if label not in labels:
            labels = labels + [label]
        _CRITERIA[num] = (ok and report.passed, dt + report.duration, labels)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        ok, dt, labels = _CRITERIA[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {num:2d}  {' + '.join(labels)}  ({dt:.1f} s)")
