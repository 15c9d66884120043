import random

import pytest
from hypothesis import HealthCheck, settings

from edgeideal.config import SEED

settings.register_profile(
    "edgeideal",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("edgeideal")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run long enumeration and family checks")
    parser.addoption("--seed", type=int, default=SEED, help="seed for randomized graph tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running check, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng(request):
    return random.Random(request.config.getoption("--seed"))
