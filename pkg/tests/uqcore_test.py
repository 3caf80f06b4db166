from __future__ import annotations

import pytest
from pytest_subtests import SubTests

from qgroups.config import RunConfig
from qgroups.coxeter import PhiSymmetricMap, cartan_type
from qgroups.errors import InvalidRootOfUnity
from qgroups.uqcore import LatticeCharacter, QuantumAlgebra


def test_commutation_relations(a2: QuantumAlgebra, b2: QuantumAlgebra, subtests: SubTests) -> None:
    for algebra in (a2, b2):
        ring = algebra.ring
        for i in range(1, 3):
            for j in range(1, 3):
                with subtests.test(f"{algebra.cartan.type_label} i={i} j={j}"):
                    bracket = algebra.E(i) * algebra.F(j) - algebra.F(j) * algebra.E(i)
                    if i == j:
                        scale = ring.one / (algebra.q_i(i) - algebra.q_i(i, -1))
                        expected = (algebra.K(i) - algebra.K(i, -1)) * scale
                    else:
                        expected = algebra.zero
                    assert bracket == expected
                    alpha_i, alpha_j = algebra.system.simple(i), algebra.system.simple(j)
                    conjugated = algebra.K(i) * algebra.E(j) * algebra.K(i, -1)
                    assert conjugated == algebra.E(j) * ring.qpow(algebra.pair(alpha_i, alpha_j))
                    conjugated = algebra.K(i) * algebra.F(j) * algebra.K(i, -1)
                    assert conjugated == algebra.F(j) * ring.qpow(-algebra.pair(alpha_i, alpha_j))


def test_arithmetic(a1: QuantumAlgebra) -> None:
    x = a1.E(1) + a1.F(1)
    assert x - x == a1.zero
    assert (x * 2) - x == x
    assert 3 - a1.one == a1.one * 2
    assert x**0 == a1.one
    assert a1.K(1) * a1.K(1, -1) == 1
    assert (a1.E(1) ** 3).terms == {((1, 1, 1), (0,), ()): a1.ring.one}
    with pytest.raises(ValueError):
        x ** -1
    with pytest.raises(ValueError):
        a1.E(2)
    assert a1.word([("E", 1, 2), ("K", 1, -1), ("F", 1, 1)]) == a1.E(1, 2) * a1.K(1, -1) * a1.F(1)


def test_weights(a2: QuantumAlgebra) -> None:
    assert (a2.E(1) * a2.F(2)).weight() == (1, -1)
    assert (a2.E(1) + a2.F(1)).weight() is None
    assert a2.zero.weight() == (0, 0)
    grades = a2.grade(a2.E(1) * a2.K(1))
    assert list(grades.values()) == [((1, 0), (0, 0), (1, 0))]


def test_coproduct(a1: QuantumAlgebra, a2: QuantumAlgebra) -> None:
    e, f, k = a1.E(1), a1.F(1), a1.K(1)
    assert a1.coproduct(e) == a1.tensor(e, k) + a1.tensor(a1.one, e)
    assert a1.coproduct(f) == a1.tensor(f, a1.one) + a1.tensor(a1.K(1, -1), f)
    assert a1.coproduct(e * f * k) == a1.coproduct(e) * a1.coproduct(f) * a1.coproduct(k)
    assert a1.delta_bar(e) == a1.tensor(e, a1.K(1, -1)) + a1.tensor(a1.one, e)

    delta = a2.coproduct(a2.E(2))
    assert a2.coproduct_leg(delta, 0) == a2.coproduct_leg(delta, 1)
    assert a2.coproduct_leg(delta, 0).legs == 3
    assert a2.flip(a2.flip(delta)) == delta
    assert a2.flip(a2.tensor(a2.E(1), a2.F(2))) == a2.tensor(a2.F(2), a2.E(1))
    assert a2.leg_embed(a2.tensor(a2.E(1), a2.F(2)), (0, 2)) == a2.tensor(a2.E(1), a2.one, a2.F(2))


def test_tensor_legs(a1: QuantumAlgebra) -> None:
    two = a1.tensor(a1.E(1), a1.one)
    three = a1.tensor(a1.E(1), a1.one, a1.one)
    with pytest.raises(ValueError):
        two + three


def test_antipode_and_counit(a1: QuantumAlgebra) -> None:
    e, f, k = a1.E(1), a1.F(1), a1.K(1)
    ring = a1.ring
    assert a1.antipode(e) == -(e * a1.K(1, -1))
    assert a1.antipode(f) == -(k * f)
    assert a1.antipode(k) == a1.K(1, -1)
    assert a1.antipode(a1.antipode(e)) == e * ring.qpow(2)
    assert a1.antipode(e * f) == a1.antipode(f) * a1.antipode(e)
    assert a1.counit(k) == ring.one
    assert a1.counit(e) == ring.zero
    assert a1.counit(e * f + k * 3) == ring(3)


def test_involutions(a2: QuantumAlgebra, subtests: SubTests) -> None:
    x = a2.E(1) * a2.E(2) * a2.F(1) * a2.K(2) + a2.F(2) * a2.ring.qpow(3)
    for which in ("omega", "u", "upsilon", "pi", "pi_bar", "eta", "Ω"):
        with subtests.test(which):
            assert a2.involution(which, a2.involution(which, x)) == x
    assert a2.involution("omega", a2.E(1)) == a2.F(1)
    assert a2.involution("eta", a2.E(1) * a2.K(1)) == a2.E(2) * a2.K(2)
    assert a2.involution("u", a2.E(1) * a2.E(2)) == a2.E(2) * a2.E(1)
    with pytest.raises(ValueError):
        a2.involution("nope", x)


def test_braid_automorphisms(a2: QuantumAlgebra, subtests: SubTests) -> None:
    assert a2.gamma(1, a2.E(1)) == -(a2.K(1, -1) * a2.F(1))
    assert a2.gamma(1, a2.F(1)) == -(a2.E(1) * a2.K(1))
    assert a2.gamma(1, a2.K(2)) == a2.K((1, 1))
    for name, x in a2.generators():
        with subtests.test(name):
            for i in (1, 2):
                assert a2.equal(a2.gamma(i, a2.gamma(i, x), inverse=True), x)
                assert a2.equal(a2.gamma(i, a2.gamma(i, x, inverse=True)), x)
            assert a2.equal(a2.gamma_word((1, 2, 1), x), a2.gamma_word((2, 1, 2), x))
    assert a2.equal(a2.gamma_word((1, 2), a2.E(1)), a2.E(2))
    assert a2.equal(a2.gamma_word((1, 2), a2.gamma_word((1, 2), a2.E(1)), inverse=True), a2.E(1))


def test_garside(a2: QuantumAlgebra, subtests: SubTests) -> None:
    longest = a2.system.reduced_word(a2.system.longest)
    for name, x in a2.generators():
        with subtests.test(name):
            assert a2.equal(a2.garside(x), a2.gamma_word(longest, x))


def test_lattice_characters(a2: QuantumAlgebra) -> None:
    ring = a2.ring
    iota = LatticeCharacter.iota(2)
    assert iota.value((1, 1), ring) == ring.one
    assert iota.value((2, 1), ring) == -ring.one
    trivial = LatticeCharacter.trivial(2)
    assert iota * iota == trivial
    assert (iota * iota.inverse()).value((3, 1), ring) == ring.one
    kappa = LatticeCharacter.kappa(a2.system, a2.system.identity)
    assert kappa.value((1, 2), ring) == ring.one


def test_equality_modulo_serre(a2: QuantumAlgebra) -> None:
    e1, e2 = a2.E(1), a2.E(2)
    serre = e1 * e1 * e2 - e1 * e2 * e1 * (a2.ring.qpow(1) + a2.ring.qpow(-1)) + e2 * e1 * e1
    assert serre != a2.zero
    assert a2.equal(serre, a2.zero)
    assert not a2.equal(e1 * e2, e2 * e1)


def test_formatting(a1: QuantumAlgebra) -> None:
    assert str(a1.zero) == "0"
    assert str(a1.one) == "1"
    assert str(a1.E(1, 2) * a1.K(1, -1) * a1.F(1)) == "E1^2 K1^-1 F1"
    assert str(-a1.E(1)) == "-E1"
    assert str(a1.coproduct(a1.K(1))) == "K1 (x) K1"
    assert a1.format(a1.E(1) + a1.F(1) + a1.one, limit=1) == "1"


def test_root_of_unity_algebra() -> None:
    algebra = QuantumAlgebra.from_config(RunConfig(type_label="A1", ell=3))
    assert algebra.root_of_unity is not None
    assert algebra.root_of_unity.ell_bar == 3
    assert algebra.ring.ell == 3
    assert algebra.E(1) * algebra.K(1) * algebra.ring.qpow(3) == algebra.E(1) * algebra.K(1)
    with pytest.raises(InvalidRootOfUnity):
        QuantumAlgebra(cartan_type("B2"), 4)
    g2 = QuantumAlgebra(cartan_type("G2"), 8, guarded=False)
    with pytest.raises(InvalidRootOfUnity):
        g2.gamma(1, g2.E(1))


def test_t_action_inverts_gamma(a2: QuantumAlgebra, b2: QuantumAlgebra, subtests: SubTests) -> None:
    for algebra in (a2, b2):
        for name, x in algebra.generators():
            for i in (1, 2):
                with subtests.test(f"{algebra.cartan.type_label} T{i} {name}"):
                    assert algebra.equal(algebra.t_action(i, x), algebra.gamma(i, x, inverse=True))
                    assert algebra.equal(algebra.t_action(i, algebra.gamma(i, x)), x)


def test_antipode_through_che(b2: QuantumAlgebra, subtests: SubTests) -> None:
    identity = PhiSymmetricMap.identity(2)
    iota = LatticeCharacter.iota(2)
    varpi = LatticeCharacter.varpi(b2.system, identity)
    assert varpi.exponents == (2, 4)
    for name, x in b2.generators():
        with subtests.test(name):
            assert b2.equal(b2.antipode(x), b2.involution("u", b2.che(identity, iota, x)))
            assert b2.equal(b2.antipode(b2.antipode(x)), b2.che(identity.scaled(0), varpi, x))


def test_che_commutes_with_omega(a2: QuantumAlgebra) -> None:
    h = PhiSymmetricMap.from_weyl(a2.system.reflection(2))
    u = LatticeCharacter((-1, 1), (1, 3))
    x = a2.E(1) * a2.F(2) + a2.K(1) * a2.E(2) * a2.ring.qpow(2)
    assert a2.equal(a2.involution("omega", a2.che(h, u, x)), a2.che(h, u, a2.involution("omega", x)))
    with pytest.raises(ValueError):
        a2.che(PhiSymmetricMap(((1, 1), (0, 1))), u, x)


def test_coproduct_gradings(a2: QuantumAlgebra) -> None:
    x = a2.E(1) * a2.K(2) * a2.F(2) * a2.E(2)
    (weight, parity, _), *_ = a2.grade(x).values()
    assert weight == (1, 0)
    for (left, right), c in a2.coproduct(x).terms.items():
        if c:
            (w_left, _, _), (w_right, p_right, _) = a2.grade(a2.term(left))[left], a2.grade(a2.term(right))[right]
            assert tuple(a + b for a, b in zip(w_left, w_right)) == weight
            assert p_right == parity
