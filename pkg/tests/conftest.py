import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("mpplab", max_examples=60, deadline=None)
settings.load_profile("mpplab")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
