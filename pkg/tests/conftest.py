import math

import numpy as np
import pytest

from casimir_opa.core import SystemConfig

ACCEPTANCE_LINES = []


@pytest.fixture
def modulated():
    """Modulated reference point: eps = 0.3 kappa, eta = 0.1 kappa, kappa/Omega = 4."""
    return SystemConfig.from_ratios(1e4, 0.3, 0.1, 4.0)


@pytest.fixture
def constant_pump():
    return SystemConfig.from_ratios(1e4, 0.3)


def random_configs(n, seed=20240511):
    """Below-threshold configs with eps/kappa in [0, 0.4], eta/kappa in [0, 0.3], kappa/Omega in [0.25, 8]."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        e, h = rng.uniform(0, 0.4), rng.uniform(0, 0.3)
        ko = rng.uniform(0.25, 8.0)
        if 2 * (e + h) < 1.0:
            out.append(SystemConfig.from_ratios(1e4, e, h, ko))
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
