import random

import pytest

from pentaperm.families import CLASSES, FamilySpec


def all_specs(i_max, j_max=None):
    j_max = i_max if j_max is None else j_max
    return [
        FamilySpec(cls, i, j)
        for cls in CLASSES
        for i in range(1, i_max + 1)
        for j in range(1, j_max + 1)
    ]


@pytest.fixture
def rng():
    return random.Random(0x5EED)
