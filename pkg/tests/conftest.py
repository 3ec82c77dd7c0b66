import math
import sys

import numpy as np
import pytest

SQ3 = math.sqrt(3)
# Exp at eps = 1, theta = pi/6, phi = 0, t = pi, evaluated by hand:
# h3 = 1/2, tau = pi/2, h1 = sqrt(3)/2, h2 = 0
FORWARD_POINT = (SQ3, SQ3, 5 * math.pi / 4 - 1.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS.values():
        terminalreporter.write_line(line)
