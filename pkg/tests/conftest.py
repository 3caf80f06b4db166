from __future__ import annotations

from random import Random
from typing import Iterator

import pytest

from qgroups import REGISTRY
from qgroups.coxeter import cartan_type
from qgroups.random import random
from qgroups.uqcore import QuantumAlgebra


@pytest.fixture(name="a1", scope="session")
def a1_fixture() -> QuantumAlgebra:
    return QuantumAlgebra(cartan_type("A1"))


@pytest.fixture(name="a2", scope="session")
def a2_fixture() -> QuantumAlgebra:
    return QuantumAlgebra(cartan_type("A2"))


@pytest.fixture(name="a3", scope="session")
def a3_fixture() -> QuantumAlgebra:
    return QuantumAlgebra(cartan_type("A3"))


@pytest.fixture(name="b2", scope="session")
def b2_fixture() -> QuantumAlgebra:
    return QuantumAlgebra(cartan_type("B2"))


@pytest.fixture(autouse=True)
def global_rand() -> Random:
    random.seed(None)
    return random


@pytest.fixture(autouse=True)
def _teardown_fixture() -> Iterator[None]:
    yield
    REGISTRY.clear_local()
