import random

import pytest


@pytest.fixture
def rng_factory():
    """Deterministic per-test RNGs: same salt, same stream."""

    def make(salt=0):
        return random.Random(f"1234:{salt}")

    return make
