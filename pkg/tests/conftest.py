import random

import pytest

from lwr.catalog import sl2
from lwr.lie import LieAlgebra
from lwr.scalars import QQ, FieldSpec

F5 = FieldSpec("prime", 5)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def sl2_alg():
    return sl2(QQ)


@pytest.fixture
def h3():
    return LieAlgebra.from_brackets(["z", "a", "b"], {("a", "b"): {"z": 1}})


@pytest.fixture
def L2():
    """Basis e1, e2 with [e2, e1] = e1."""
    return LieAlgebra.from_brackets(["e1", "e2"], {("e2", "e1"): {"e1": 1}})


@pytest.fixture
def r2():
    """M = <z1, z2> with [z1, z2] = z1."""
    return LieAlgebra.from_brackets(["z1", "z2"], {("z1", "z2"): {"z1": 1}})
