from __future__ import annotations

import pytest
from pytest_subtests import SubTests

from qgroups.coxeter import cartan_type
from qgroups.errors import ParseError
from qgroups.grammar import Generator, Power, Product, Sum, Tensor, parse, parse_element
from qgroups.uqcore import QuantumAlgebra


@pytest.fixture(name="a1_3", scope="module")
def a1_3_fixture() -> QuantumAlgebra:
    return QuantumAlgebra(cartan_type("A1"), 3)


def test_syntax_tree() -> None:
    tree = parse("E1 F2 K1^-1")
    assert isinstance(tree, Product)
    assert tree.first == Generator("E", 1, 1)
    assert [op for op, _ in tree.rest] == ["*", "*"]
    assert tree.rest[1][1] == Power(Generator("K", 1, 7), -1, 7)

    assert isinstance(parse("E1 (x) K1 + 1 (x) E1"), Sum)
    assert isinstance(parse("E1 ⊗ K1"), Tensor)
    assert isinstance(parse("-E1"), Sum)
    assert parse("(E1)") == Generator("E", 1, 2)


def test_syntax_errors(subtests: SubTests) -> None:
    for text in ("E1 +", "E", "(E1", "E1 ^ x", ""):
        with subtests.test(text):
            with pytest.raises(ParseError) as excinfo:
                parse(text)
            assert excinfo.value.column >= 1


def test_generators(a2: QuantumAlgebra) -> None:
    assert parse_element(a2, "E1 E2 F1") == a2.E(1) * a2.E(2) * a2.F(1)
    assert parse_element(a2, "K2^-3") == a2.K(2, -3)
    assert parse_element(a2, "E1^2 - 2*E1 E1 + E1^2") == a2.zero
    assert parse_element(a2, "3/2") == a2.coerce(a2.ring.one * 3 / 2)


def test_commutator(a1: QuantumAlgebra) -> None:
    ring = a1.ring
    x = parse_element(a1, "(q - q^-1)^-1 * (E1 F1 - F1 E1)")
    expected = (a1.K(1) - a1.K(1, -1)) * (ring.one / (ring.qpow(1) - ring.qpow(-1)))
    assert a1.equal(x, expected)


def test_coproduct(a1: QuantumAlgebra, a2: QuantumAlgebra) -> None:
    assert parse_element(a1, "E1 (x) K1 + 1 (x) E1") == a1.coproduct(a1.E(1))
    assert parse_element(a2, "F2 (x) 1 + K2^-1 (x) F2") == a2.coproduct(a2.F(2))
    three = parse_element(a1, "E1 (x) 1 (x) K1")
    assert three.legs == 3


def test_round_trip(a1: QuantumAlgebra, a2: QuantumAlgebra, a1_3: QuantumAlgebra, subtests: SubTests) -> None:
    x = a2.E(1) * a2.E(2) * a2.F(1) + a2.F(2) * a2.K(1, -1) * 3
    cases = {
        "element": (a2, x),
        "tensor": (a1, a1.coproduct(a1.E(1) * a1.F(1))),
        "root of unity": (a1_3, a1_3.coproduct(a1_3.E(1, 2) * a1_3.K(1))),
    }
    for name, (algebra, value) in cases.items():
        with subtests.test(name):
            text = str(value)
            assert parse_element(algebra, text) == value


def test_evaluation_errors(a2: QuantumAlgebra, a1_3: QuantumAlgebra, subtests: SubTests) -> None:
    cases = {
        "E1 + E7": (a2, 6),
        "z * E1": (a2, 1),
        "E1 * q": (a1_3, 6),
        "E1^-1": (a2, 1),
        "E1 / E2": (a2, 1),
        "E1 / (q - q)": (a2, 1),
        "E1 (x) E1 + E1": (a2, 1),
        "E1 (x) E1 + E1 (x) E1 (x) E1": (a2, 1),
        "E1 (x) E1 (x) E1 (x) E1": (a2, 1),
    }
    for text, (algebra, column) in cases.items():
        with subtests.test(text):
            with pytest.raises(ParseError) as excinfo:
                parse_element(algebra, text)
            assert excinfo.value.column == column
