from __future__ import annotations

from itertools import product

import pytest
from pytest_subtests import SubTests

from qgroups.coxeter import build_root_system, cartan_type
from qgroups.errors import DegreeBoundExceeded
from qgroups.qring import qnum
from qgroups.slices import kostant_partition_count, words_of_weight
from qgroups.uqcore import QuantumAlgebra, TensorElement


def test_words_of_weight() -> None:
    assert words_of_weight((1, 1)) == [(2, 1), (1, 2)]
    assert words_of_weight((0, 0)) == [()]
    assert len(words_of_weight((2, 2))) == 6
    assert words_of_weight((2, 0, 1))[0] == (3, 1, 1)


def test_kostant_partitions() -> None:
    a2 = build_root_system(cartan_type("A2"))
    assert kostant_partition_count(a2, (0, 0)) == 1
    assert kostant_partition_count(a2, (1, 1)) == 2
    assert kostant_partition_count(a2, (2, 2)) == 3
    b2 = build_root_system(cartan_type("B2"))
    assert kostant_partition_count(b2, (2, 1)) == 3


def test_dimensions_match_partitions(a2: QuantumAlgebra, b2: QuantumAlgebra, subtests: SubTests) -> None:
    for algebra in (a2, b2):
        for weight in product(range(3), repeat=2):
            with subtests.test(f"{algebra.cartan.type_label} {weight}"):
                assert algebra.oracle.dimension(weight) == kostant_partition_count(algebra.system, weight)


def test_table(a2: QuantumAlgebra) -> None:
    table = a2.oracle.table((2, 1))
    assert table.words == ((2, 1, 1), (1, 2, 1), (1, 1, 2))
    assert table.dimension == 2
    assert set(table.basis) | set(table.reductions) == set(table.words)
    assert a2.oracle.table((1, 1)).reductions == {}


def test_serre_relation(a2: QuantumAlgebra, b2: QuantumAlgebra) -> None:
    ring = a2.ring
    assert a2.oracle.serre(1, 2) == {(1, 1, 2): ring.one, (1, 2, 1): -qnum(2), (2, 1, 1): ring.one}
    assert len(b2.oracle.serre(1, 2)) == 4
    assert len(b2.oracle.serre(2, 1)) == 3
    assert len(a2.oracle.relations()) == 2


def test_limits() -> None:
    algebra = QuantumAlgebra(cartan_type("A2"), degree_bound=3)
    with pytest.raises(DegreeBoundExceeded):
        algebra.oracle.table((2, 2))
    with pytest.raises(ValueError):
        algebra.oracle.table((-1, 1))


def test_equality(a2: QuantumAlgebra) -> None:
    e1, e2, f1 = a2.E(1), a2.E(2), a2.F(1)
    oracle = a2.oracle
    serre = e1 * e1 * e2 - e1 * e2 * e1 * qnum(2) + e2 * e1 * e1
    assert oracle.equal(serre * f1 * a2.K(2), a2.zero)
    assert oracle.equal(serre, a2.zero, part="plus")
    with pytest.raises(ValueError):
        oracle.equal(serre + f1, a2.zero, part="plus")
    with pytest.raises(ValueError):
        oracle.equal(serre + e1, a2.zero, part="minus")
    assert oracle.tensor_equal(a2.coproduct(serre), TensorElement(a2, 2))
    assert not oracle.tensor_equal(a2.coproduct(e1 * e2), a2.coproduct(e2 * e1))


def test_express(a2: QuantumAlgebra) -> None:
    e1, e2 = a2.E(1), a2.E(2)
    oracle = a2.oracle
    assert oracle.express(e1 * e1 * e2, [e1 * e2 * e1, e2 * e1 * e1]) == [qnum(2), -a2.ring.one]
    assert oracle.express(e1 * e2, [e2 * e1]) is None
    assert oracle.express(a2.zero, [e1]) == [a2.ring.zero]
    assert oracle.rank([e1 * e2, e2 * e1, e1 * e2 + e2 * e1]) == 2
    assert oracle.rank([]) == 0
