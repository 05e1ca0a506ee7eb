import numpy as np
import pytest
from hypothesis import HealthCheck, settings

# One deterministic profile for the whole suite: derandomized so repeated runs
# see identical examples, no deadline because LAPACK warm-up skews timings.
settings.register_profile(
    "deterministic",
    derandomize=True,
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
