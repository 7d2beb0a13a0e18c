import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("ckwork", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ckwork")


@pytest.fixture
def tau_grid():
    return np.linspace(0.0, 5.0, 101)


def pytest_terminal_summary(terminalreporter):
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid:
                continue
            number = nodeid.split("test_criterion_")[1].split("_")[0].rstrip("abc")
            ok = outcome == "passed" and results.get(number, True)
            results[number] = ok
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results, key=int):
            terminalreporter.write_line(
                f"criterion {number}: {'PASS' if results[number] else 'FAIL'}")
