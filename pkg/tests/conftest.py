import functools

import pytest
from hypothesis import settings

from omegafam import corpus as cp

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def _corpus():
    return tuple(cp.corpus())


@pytest.fixture(scope="session")
def corpus():
    return _corpus()


@pytest.fixture(scope="session")
def twisted_instances():
    return tuple(i for i in _corpus() if i.cocycle is not None)
