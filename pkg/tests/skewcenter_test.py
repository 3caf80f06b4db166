from __future__ import annotations

import pytest
from pytest_subtests import SubTests

from qgroups.coxeter import build_root_system, cartan_type
from qgroups.errors import InvalidRootOfUnity, UnsupportedType
from qgroups.skewcenter import (
    IdealKind,
    IdealSpec,
    SignTable,
    SkewCenter,
    classification_context,
    classify_central,
    classify_commutative,
    decision_table,
    maximal_commutative,
    monomial,
)
from qgroups.uqcore import QuantumAlgebra


@pytest.fixture(name="a2_3", scope="module")
def a2_3_fixture() -> SkewCenter:
    return SkewCenter(QuantumAlgebra(cartan_type("A2"), 3))


@pytest.fixture(name="a2_4", scope="module")
def a2_4_fixture() -> SkewCenter:
    return SkewCenter(QuantumAlgebra(cartan_type("A2"), 4))


@pytest.fixture(name="b2_8", scope="module")
def b2_8_fixture() -> SkewCenter:
    return SkewCenter(QuantumAlgebra(cartan_type("B2"), 8))


def test_needs_root_of_unity(a2: QuantumAlgebra) -> None:
    with pytest.raises(InvalidRootOfUnity):
        SkewCenter(a2)


def test_signs_trivial_for_odd_ell(a2_3: SkewCenter) -> None:
    signs = a2_3.signs
    for alpha in a2_3.system.positive:
        for k in (1, 2):
            assert signs.kappa(alpha, a2_3.system.simple(k)) == 1
        for beta in a2_3.system.positive:
            assert signs.pi(alpha, beta) == 1


def test_kappa_b2(b2_8: SkewCenter) -> None:
    kappa = b2_8.signs.kappa
    assert kappa((0, 1), (1, 0)) == -1
    assert kappa((1, 1), (1, 0)) == 1
    assert kappa((1, 0), (1, 0)) == 1


def test_pi_is_symmetric(b2_8: SkewCenter, a2_4: SkewCenter) -> None:
    for sc in (b2_8, a2_4):
        roots = sc.system.positive
        for alpha in roots:
            assert sc.signs.pi(alpha, alpha) == 1
            for beta in roots:
                assert sc.signs.pi(alpha, beta) == sc.signs.pi(beta, alpha)


def test_primitive_power_names(a2_3: SkewCenter) -> None:
    assert str(a2_3.X((1, 2))) == "X_(12)"
    assert str(a2_3.Y((1,))) == "Y_(1)"
    assert str(a2_3.L(1)) == "L^(1,0)"
    assert str(a2_3.X((1,), hat=True)) == "X̂_(1)"


def test_weights(a2_3: SkewCenter, b2_8: SkewCenter) -> None:
    assert a2_3.weight(a2_3.X((1, 2))) == (3, 3)
    assert a2_3.weight(a2_3.Y((2,))) == (0, -3)
    assert a2_3.weight(a2_3.L(2)) == (0, 0)
    assert b2_8.weight(b2_8.X((1, 2, 1))) == (4, 4)
    assert b2_8.weight(b2_8.X((1, 2))) == (4, 2)


def test_skew_commutation_with_sign(a2_4: SkewCenter) -> None:
    algebra = a2_4.algebra
    x1 = a2_4.X((1,))
    E2 = algebra.E(2)
    assert a2_4.commutation_sign(x1, E2) == -1
    assert algebra.equal(a2_4.element(x1) * E2, -(E2 * a2_4.element(x1)))
    assert a2_4.skew_commutes(x1, E2)


def test_skew_commute_verify(a2_4: SkewCenter, subtests: SubTests) -> None:
    for label, ok in a2_4.skew_commute_verify((1, 2)).items():
        with subtests.test(label):
            assert ok


def test_gamma_simple(a2_3: SkewCenter) -> None:
    report = a2_3.verify_gamma_simple(1)
    assert report and all(report.values())


def test_rank2_relation(a2_3: SkewCenter) -> None:
    algebra = a2_3.algebra
    nabla = a2_3.nabla(1)
    x1, x2 = a2_3.element(a2_3.X((1,))), a2_3.element(a2_3.X((2,)))
    total = a2_3.element(a2_3.X((1, 2))) + a2_3.element(a2_3.X((2, 1))) + x1 * x2 * nabla
    assert algebra.equal(total, algebra.zero)

    target, poly = a2_3.reexpress("ji")
    assert target == a2_3.X((2, 1))
    assert poly == {
        monomial((a2_3.X((1, 2)), 1)): -a2_3.ring.one,
        monomial((a2_3.X((2,)), 1), (a2_3.X((1,)), 1)): -nabla,
    }
    assert algebra.equal(a2_3.realize(poly), a2_3.element(target))


def test_type_a_coproduct(a2_3: SkewCenter) -> None:
    x13 = a2_3.type_a_generator(1, 3)
    assert x13 == a2_3.X((1, 2))
    t = a2_3.z_coproduct(x13)
    assert len(t) == 3
    assert t[((), monomial((x13, 1)))] == a2_3.ring.one
    assert t[(monomial((x13, 1)), monomial((a2_3.L((1, 1)), 1)))] == a2_3.ring.one
    assert a2_3.verify_coproduct(x13)


def test_simple_coproduct(a2_4: SkewCenter, b2_8: SkewCenter) -> None:
    assert a2_4.verify_coproduct(a2_4.X((2,)))
    t = b2_8.z_coproduct(b2_8.X((2,)))
    assert set(t) == {
        (monomial((b2_8.X((2,)), 1)), monomial((b2_8.L(2), 1))),
        ((), monomial((b2_8.X((2,)), 1))),
    }


def test_hat_coproduct_is_integral(a2_3: SkewCenter) -> None:
    t = a2_3.z_coproduct(a2_3.X((1, 2), hat=True))
    assert set(t.values()) == {a2_3.ring.one}
    assert a2_3.hat_integral(t)


def test_b2_closed_forms_are_homogeneous(b2_8: SkewCenter) -> None:
    for word in ((1, 2, 1), (1, 2)):
        p = b2_8.X(word)
        assert b2_8.z_coproduct(p)
        factor, poly = b2_8.b2_antipode(p)
        assert factor and poly
        for m in poly:
            assert b2_8.monomial_weight(m) == b2_8.weight(p)


def test_closed_coproducts_limited(a2_4: SkewCenter) -> None:
    with pytest.raises(UnsupportedType):
        a2_4.z_coproduct(a2_4.Y((1,)))
    with pytest.raises(UnsupportedType):
        a2_4.b2_antipode(a2_4.X((1, 2)))


def test_ideal_membership(a2_3: SkewCenter) -> None:
    algebra = a2_3.algebra
    assert a2_3.ideal_member(a2_3.element(a2_3.X((1, 2))), IdealSpec(IdealKind.K_PLUS, u=(1, 2)))
    assert not a2_3.ideal_member(algebra.E(1, 2), IdealSpec(IdealKind.K_PLUS, u=(1,)))
    assert not a2_3.ideal_member(a2_3.element(a2_3.X((2,))), IdealSpec(IdealKind.K_PLUS, u=(1,)))
    assert a2_3.ideal_member(a2_3.element(a2_3.X((2,))), IdealSpec(IdealKind.K_PLUS, u=(1, 2, 1)))


def test_ideal_domain(a2_3: SkewCenter) -> None:
    with pytest.raises(TypeError):
        a2_3.ideal_member(a2_3.algebra.E(1), IdealSpec(IdealKind.N, u=(1,)))
    with pytest.raises(ValueError):
        a2_3.ideal_member(a2_3.algebra.F(1), IdealSpec(IdealKind.K_PLUS, u=(1,)))


def test_parity(a2_3: SkewCenter) -> None:
    x1, x2, x12 = a2_3.X((1,)), a2_3.X((2,)), a2_3.X((1, 2))
    one = a2_3.ring.one
    assert a2_3.parity({monomial((x1, 1)): one}) == ((1, 0), (0, 0))
    poly = {monomial((x12, 3)): one, monomial((x1, 5), (x2, 1)): one}
    assert a2_3.parity(poly) == ((1, 1), (0, 0))
    assert a2_3.parity({monomial((x1, 1)): one, monomial((x2, 1)): one}) is None
    assert a2_3.g_action(((0, 0), (0, 0)), poly) == poly


def test_g_invariance(a2_4: SkewCenter) -> None:
    one = a2_4.ring.one
    x1 = {monomial((a2_4.X((1,)), 1)): one}
    x2 = {monomial((a2_4.X((2,)), 1)): one}
    both = {**x1, **x2}
    assert not a2_4.is_g_invariant([both])
    assert not a2_4.respects_grading([both])
    assert a2_4.is_g_invariant([x1, x2])
    assert a2_4.respects_grading([x1, x2])


def test_classification_literal_matches_signs(subtests: SubTests) -> None:
    for label, ells in (("A2", (3, 4, 5, 6, 8)), ("B2", (3, 5, 6, 8, 12)), ("G2", (5, 8, 10, 12))):
        cartan = cartan_type(label)
        system = build_root_system(cartan)
        for ell in ells:
            ctx = classification_context(cartan, ell)
            for s in system.elements:
                with subtests.test(f"{label} ℓ={ell} {system.reduced_word(s)}"):
                    assert classify_central(system, ctx, s) == classify_central(system, ctx, s, method="signs")
                    assert classify_commutative(system, ctx, s) == classify_commutative(
                        system, ctx, s, method="signs"
                    )


def test_classification_context_guard() -> None:
    with pytest.raises(InvalidRootOfUnity):
        classification_context(cartan_type("B2"), 4)
    assert classification_context(cartan_type("G2"), 8).ell == 8


def test_maximal_commutative() -> None:
    assert maximal_commutative(cartan_type("A1"), 6)
    assert maximal_commutative(cartan_type("A2"), 4)
    assert not maximal_commutative(cartan_type("A2"), 6)
    assert maximal_commutative(cartan_type("B2"), 6)


def test_decision_table() -> None:
    rows = decision_table("A2", [4, 6])
    assert len(rows) == 4
    assert all(row["agrees"] for row in rows)
    assert {row["variant"] for row in rows} == {"central", "commutative"}
    assert all(row["of"] == 6 for row in rows)


def test_pairing_nondegenerate() -> None:
    for label, expected in (("A2", True), ("A3", False), ("G2", True), ("B2", False)):
        system = build_root_system(cartan_type(label))
        assert SignTable(system, classification_context(system.cartan, 8)).pairing_nondegenerate() is expected


@pytest.mark.parametrize(
    "label, ell, which",
    [
        ("A2", 3, "ji"),
        ("A2", 5, "ji"),
        ("A2", 8, "ji"),
        ("A2", 8, "b"),
        ("B2", 3, "ji"),
        ("B2", 3, "b"),
        ("B2", 5, "ji"),
        ("B2", 8, "ji"),
        ("B2", 8, "b"),
    ],
)
def test_reexpression(label: str, ell: int, which: str, subtests: SubTests) -> None:
    center = SkewCenter(QuantumAlgebra(cartan_type(label), ell, degree_bound=10))
    for name, ok in center.verify_reexpression(which).items():  # type: ignore[arg-type]
        with subtests.test(name):
            assert ok


def test_reexpression_b2_targets(b2_8: SkewCenter) -> None:
    target, poly = b2_8.reexpress("b")
    assert target == b2_8.X((2, 1, 2))
    assert monomial((b2_8.X((1, 2)), 1)) in poly
    with pytest.raises(ValueError):
        b2_8.reexpress("nope")  # type: ignore[arg-type]


def test_word_independence(a2_3: SkewCenter) -> None:
    assert a2_3.word_independent((1, 2, 1), (2, 1, 2))
    assert a2_3.word_independent((2, 1, 2), (1, 2, 1))


def test_ideal_recursion(a2_3: SkewCenter) -> None:
    report = a2_3.verify_ideal_recursion((1,), (2, 1))
    assert report == {"Γ_(1,)(X_(2,))": True, "Γ_(1,)(X_(2, 1))": True}


def test_quotient_dimension(a2_3: SkewCenter, subtests: SubTests) -> None:
    for w in [(1,), (1, 2), (1, 2, 1)]:
        for nu in [(3, 0), (3, 1), (2, 2), (3, 3), (4, 2)]:
            with subtests.test(f"{w} {nu}"):
                dimension, count = a2_3.quotient_dimension(w, nu)
                assert dimension == count
    assert a2_3.quotient_dimension((1,), (1, 1)) == (2, 2)
    assert a2_3.quotient_dimension((1,), (3, 0)) == (0, 0)


def test_simple_quotient_survivors(a2_3: SkewCenter, b2_8: SkewCenter) -> None:
    assert a2_3.simple_quotient_survivors(3) == [True] * 3
    with pytest.raises(UnsupportedType):
        b2_8.simple_quotient_survivors(1)


def test_artin_on_Z(a2_3: SkewCenter) -> None:
    one = a2_3.ring.one
    image = a2_3.artin_on_Z(1, {monomial((a2_3.X((2,)), 1)): one})
    assert image == {monomial((a2_3.X((1, 2)), 1)): one}
    back = a2_3.artin_on_Z(1, image, inverse=True)
    assert a2_3.algebra.equal(a2_3.realize(back), a2_3.element(a2_3.X((2,))))
    shifted = a2_3.artin_on_Z(2, {monomial((a2_3.L(1), 1)): one})
    assert shifted == {monomial((a2_3.L((1, 1)), 1)): one}


def test_artin_on_Z_excludes_g2() -> None:
    center = SkewCenter(QuantumAlgebra(cartan_type("G2"), 5))
    with pytest.raises(UnsupportedType):
        center.artin_on_Z(1, {monomial((center.X((1,)), 1)): center.ring.one})


def test_monomial_relations(a2_4: SkewCenter, subtests: SubTests) -> None:
    for psi, phi in [((1, 0, 0), (0, 0, 1)), ((0, 0, 1), (1, 0, 0)), ((1, 0, 0), (1, 0, 0))]:
        for name, ok in a2_4.verify_monomial_relations((1, 2, 1), psi, phi).items():
            with subtests.test(f"{psi} {phi} {name}"):
                assert ok


def test_kappa_shift(a2_4: SkewCenter, subtests: SubTests) -> None:
    for psi, rho in [((1, 0, 0), (0, 0, 1)), ((0, 0, 1), (0, 1, 0)), ((0, 1, 0), (1, 0, 0))]:
        for name, ok in a2_4.verify_kappa_shift((1, 2, 1), psi, rho).items():
            with subtests.test(f"{psi} {rho} {name}"):
                assert ok


def test_g_commutation(a2_4: SkewCenter, subtests: SubTests) -> None:
    for name, ok in a2_4.verify_g_commutation((1, 2)).items():
        with subtests.test(name):
            assert ok
