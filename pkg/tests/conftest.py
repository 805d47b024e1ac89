import numpy as np
import pytest
from hypothesis import settings

from saa.field import PrimeField

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SMALL_PRIMES = (2, 3, 5, 7)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture(params=SMALL_PRIMES, ids=lambda p: f"GF{p}")
def field(request):
    return PrimeField(request.param)
