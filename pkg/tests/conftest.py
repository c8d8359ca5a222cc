import os

import pytest
from hypothesis import HealthCheck, settings

from fockforge import Lattice

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("HYPOTHESIS_EXAMPLES", "60")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# criterion number -> (passed, label), filled by tests/test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture
def a1():
    return Lattice.A(1)


@pytest.fixture
def a2():
    return Lattice.A(2)


@pytest.fixture
def indefinite():
    return Lattice([[2, 1], [1, -2]])


@pytest.fixture
def mixed():
    """Two even colors and one odd color."""
    return Lattice([[2, -1, 0], [-1, 2, 0], [0, 0, 1]], ["even", "even", "odd"])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, label = ACCEPTANCE[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {label}")
