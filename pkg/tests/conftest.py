import os

import pytest
from hypothesis import HealthCheck, settings

from orbit_tiebreak.corpus import builtin_example

SEED = int(os.environ.get("ORBIT_TIEBREAK_SEED", "20240601"))

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def seed():
    return SEED


@pytest.fixture(scope="session")
def corpus():
    return {name: builtin_example(name) for name in ("condorcet", "two-pairs", "three-way", "petersen", "path4")}


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
