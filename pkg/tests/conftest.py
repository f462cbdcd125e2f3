import os
import random

import pytest
from hypothesis import HealthCheck, settings

from logjets import _kernels

from helpers import ACCEPTANCE, FIXTURES, SEED


settings.register_profile(
    "logjets",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("logjets")

def pytest_sessionstart(session):
    # compile (or load cached) kernels before any timed test runs
    _kernels.warmup()


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
