import numpy as np
import pytest

# rows b1..b3, columns u1, u2
CANONICAL = np.array([[4.0, 0.0], [2.0, 2.0], [0.0, 4.0]])


@pytest.fixture
def W():
    return CANONICAL.copy()


def pytest_terminal_summary(terminalreporter):
    reports = [r for key in ("passed", "failed") for r in terminalreporter.stats.get(key, [])
               if getattr(r, "when", "") == "call" and "test_acceptance.py" in r.nodeid]
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(reports, key=lambda r: r.nodeid):
        name = r.nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if r.passed else 'FAIL'}  {name}")
