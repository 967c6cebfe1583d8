from functools import lru_cache

import numpy as np
import pytest
from hypothesis import settings

from ncq.groups import make_group

settings.register_profile("ncq", max_examples=25, deadline=None, derandomize=True)
settings.load_profile("ncq")

SMALL = ("cyclic:4", "cyclic:5", "cyclic:2xcyclic:2", "dihedral:3", "dihedral:4", "quaternion8", "symmetric:3")
NONABELIAN = ("dihedral:3", "dihedral:4", "quaternion8", "symmetric:3", "heisenberg:3")


@lru_cache(maxsize=None)
def group(spec):
    return make_group(spec)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
