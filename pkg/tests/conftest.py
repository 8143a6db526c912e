import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from lilrs import CodeSpec, get_field

settings.register_profile(
    "suite",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def f4():
    return get_field(2, 2)


@pytest.fixture(scope="session")
def f9():
    return get_field(3, 2)


@pytest.fixture(scope="session")
def f27():
    return get_field(3, 3)


@pytest.fixture(scope="session")
def sim_spec():
    """The Monte Carlo simulation code: F_27, 2 shots, 3-interleaved, n_t=(3,3), k=3."""
    return CodeSpec.standard(q=3, m=3, shots=2, interleaving=3, shot_dims=(3, 3), k=3)


@pytest.fixture(scope="session")
def tiny_spec():
    """Exhaustively enumerable code: F_9, 2 shots, s=1, n_t=(1,1), k=1 (9 codewords)."""
    return CodeSpec.standard(q=3, m=2, shots=2, interleaving=1, shot_dims=(1, 1), k=1)


@pytest.fixture()
def rng():
    return np.random.Generator(np.random.PCG64(12345))
