import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from fplab.field import make_field

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
settings.load_profile("suite")

_CACHE = {}


def get_field(p: int):
    """Session-wide field cache; table construction is the only nontrivial cost."""
    if p not in _CACHE:
        _CACHE[p] = make_field(p)
    return _CACHE[p]


@pytest.fixture
def fields():
    return get_field


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(12345))
