import random

import pytest
from hypothesis import strategies as st

from weightedproj.fan import fan_from_rays
from weightedproj.weights import normalize

PAPER_RAYS = [(-2, -3, -4), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
PAPER_CHI = (1, 2, 3, 4)


@pytest.fixture
def paper_fan():
    return fan_from_rays(PAPER_RAYS, PAPER_CHI)


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_chi(rng, max_n, max_weight, min_n=1):
    n = rng.randint(min_n, max_n)
    return tuple(rng.randint(1, max_weight) for _ in range(n + 1))


def random_normalized_chi(rng, max_n, max_weight, min_n=1):
    return normalize(random_chi(rng, max_n, max_weight, min_n))


weight_vectors = st.lists(st.integers(1, 40), min_size=2, max_size=5).map(tuple)
