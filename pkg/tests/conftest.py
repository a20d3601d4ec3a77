import sys

import numpy as np
import pytest

from conforminv import make_ellipse


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # the acceptance module collects one PASS/FAIL line per check; output
    # capture would swallow them mid-run, so echo them here at the end
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "REPORT_LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance summary")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)


@pytest.fixture
def circle():
    """Factory for circle curves: circle(n, radius=1, kind='interior')."""

    def build(n, radius=1.0, kind="interior"):
        return make_ellipse(radius, radius, n, kind)

    return build
