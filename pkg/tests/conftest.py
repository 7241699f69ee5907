"""Shared fixtures and the acceptance-summary reporting hook."""

import sys

import numpy as np
import pytest


@pytest.fixture
def hilbert4():
    return np.array([[1.0 / (i + j + 1) for j in range(4)] for i in range(4)])


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
