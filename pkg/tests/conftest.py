import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from soltorus.torus import TorusPresentation

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def P2():
    return TorusPresentation(2, 1, (2,))


@pytest.fixture(scope="session")
def P3():
    return TorusPresentation(2, 1, (3,))


@pytest.fixture(scope="session")
def P22():
    return TorusPresentation(4, 2, (2, 2))


@pytest.fixture(scope="session")
def P0():
    return TorusPresentation(2, 0, ())
