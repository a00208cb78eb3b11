import random
from fractions import Fraction

import pytest


def rand_prob(rng: random.Random, max_den: int = 12) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, den), den)


@pytest.fixture
def rng():
    return random.Random(20260825)
