from __future__ import annotations

import pytest
from pytest_subtests import SubTests

from qgroups.coxeter import cartan_type
from qgroups.errors import NotReduced, SingularNormalization, UnsupportedType
from qgroups.pbw import (
    Direction,
    ExponentFunction,
    Normalization,
    PBWMonomial,
    Rank2,
    exponent_vectors,
    type_a_position,
    type_a_word,
)
from qgroups.qring import qfact
from qgroups.slices import kostant_partition_count
from qgroups.uqcore import QuantumAlgebra


def test_rank_two_root_vectors(a2: QuantumAlgebra, b2: QuantumAlgebra) -> None:
    q = a2.ring.qpow
    E = a2.E
    assert a2.equal(a2.pbw.e_w((1, 2)), E(1) * E(2) * q(-1) - E(2) * E(1))
    assert a2.equal(a2.pbw.e_w((2, 1)), E(2) * E(1) * q(-1) - E(1) * E(2))

    q = b2.ring.qpow
    E = b2.E
    assert b2.equal(b2.pbw.e_w((2, 1)), E(2) * E(1) * q(-2) - E(1) * E(2))
    assert b2.equal(b2.pbw.e_w((1, 2, 1)), E(1) * E(2) * q(-2) - E(2) * E(1))


def test_simple_root_vectors(a2: QuantumAlgebra, b2: QuantumAlgebra) -> None:
    assert a2.equal(a2.pbw.e_w((1, 2, 1)), a2.E(2))
    assert a2.equal(a2.pbw.f_w((1, 2, 1)), a2.F(2))
    assert b2.equal(b2.pbw.e_w((1, 2, 1, 2)), b2.E(2))


def test_root_vectors_need_reduced_words(a2: QuantumAlgebra) -> None:
    with pytest.raises(NotReduced):
        a2.pbw.e_w((1, 1))
    with pytest.raises(NotReduced):
        a2.pbw.e_w(())


def test_exponent_function() -> None:
    psi = ExponentFunction.along([(1, 0), (1, 1), (0, 1)], [2, 0, 1])
    assert psi.support == ((0, 1), (1, 0))
    assert psi.vector == (2, 1)
    assert psi.n == 3
    assert psi[(1, 1)] == 0
    assert psi.exponents([(1, 0), (1, 1), (0, 1)]) == (2, 0, 1)
    with pytest.raises(ValueError):
        psi.exponents([(1, 0)])
    with pytest.raises(ValueError):
        ExponentFunction.of(2, {(1, 0): -1})


def test_basis_sizes(subtests: SubTests, a2: QuantumAlgebra, b2: QuantumAlgebra) -> None:
    cases = [(a2, (1, 2, 1), (1, 0), 1), (a2, (1, 2, 1), (1, 1), 2), (b2, (1, 2, 1, 2), (2, 1), 3)]
    for algebra, z, weight, size in cases:
        with subtests.test(f"{algebra.cartan.type_label} {weight}"):
            basis = algebra.pbw.basis(z, weight)
            assert len(basis) == size
            assert len(basis) == kostant_partition_count(algebra.system, weight)
            assert len(set(exponent_vectors(algebra.system.convex_order(z), weight))) == size


def test_basis_spans_slice(a2: QuantumAlgebra) -> None:
    monomials = [a2.pbw.expand(m) for m in a2.pbw.basis((1, 2, 1), (2, 1))]
    assert a2.oracle.rank(monomials) == a2.oracle.dimension((2, 1))


def test_normalizations(a2: QuantumAlgebra) -> None:
    pbw = a2.pbw
    plain = pbw.monomial((1, 2, 1), (2, 1, 0))
    divided = pbw.monomial((1, 2, 1), (2, 1, 0), normalization=Normalization.DIVIDED)
    singular = pbw.monomial((1, 2, 1), (2, 1, 0), normalization=Normalization.SINGULAR)
    factorial = pbw.psi_factorial(plain.psi)
    assert factorial == qfact(2, 1, a2.ring)
    assert a2.equal(pbw.expand(divided) * factorial, pbw.expand(plain))
    assert a2.equal(pbw.expand(singular), pbw.expand(plain) * pbw.delta(plain.psi))
    q = a2.ring.qpow
    assert pbw.delta(plain.psi) == (q(-1) - q(1)) ** 3
    assert pbw.normalization_factor(plain.psi, Normalization.HAT) == pbw.delta(plain.psi) * q(1)


def test_divided_powers_vanish_at_roots_of_unity() -> None:
    algebra = QuantumAlgebra(cartan_type("A2"), 4, guarded=False)
    assert algebra.equal(algebra.pbw.divided_power((1,), 1), algebra.E(1))
    with pytest.raises(SingularNormalization):
        algebra.pbw.divided_power((1,), 2)


def test_directions(a2: QuantumAlgebra) -> None:
    pbw = a2.pbw
    right = pbw.monomial((1, 2, 1), (1, 0, 1))
    left = pbw.monomial((1, 2, 1), (1, 0, 1), Direction.LEFT)
    assert a2.equal(pbw.expand(right), a2.E(1) * a2.E(2))
    assert a2.equal(pbw.expand(left), a2.E(2) * a2.E(1))


def test_upsilon_on_monomials(subtests: SubTests, a2: QuantumAlgebra) -> None:
    pbw = a2.pbw
    for ks in [(1, 0, 0), (0, 1, 0), (1, 0, 1)]:
        with subtests.test(str(ks)):
            m = pbw.monomial((1, 2, 1), ks)
            c, image = pbw.upsilon_image(m)
            assert image.direction is Direction.LEFT
            assert a2.equal(a2.involution("upsilon", pbw.expand(m)), pbw.expand(image) * c)


def test_u_swaps_rank_two_root_vectors(a2: QuantumAlgebra) -> None:
    pbw = a2.pbw
    assert a2.equal(a2.involution("u", pbw.e_w((1, 2))), pbw.e_w((2, 1)))
    m = pbw.monomial((1, 2, 1), (0, 1, 0))
    assert pbw.u_image(m).word == (2, 1, 2)
    assert a2.equal(a2.involution("u", pbw.expand(m)), pbw.expand(pbw.u_image(m)))


def test_antipode_on_simple_monomials(a2: QuantumAlgebra) -> None:
    pbw = a2.pbw
    e = pbw.monomial((1, 2, 1), (1, 0, 0))
    f = pbw.monomial((1, 2, 1), (1, 0, 0), kind="F")
    assert a2.equal(pbw.antipode_image(e), a2.antipode(a2.E(1)))
    assert a2.equal(pbw.antipode_image(f), a2.antipode(a2.F(1)))


def test_coordinates(a2: QuantumAlgebra) -> None:
    pbw = a2.pbw
    coordinates = pbw.coordinates(a2.E(2) * a2.E(1), (1, 2, 1))
    q = a2.ring.qpow
    assert coordinates == {
        PBWMonomial((1, 2, 1), ExponentFunction.along(a2.system.convex_order((1, 2, 1)), (1, 0, 1))): q(-1),
        PBWMonomial((1, 2, 1), ExponentFunction.along(a2.system.convex_order((1, 2, 1)), (0, 1, 0))): -a2.ring.one,
    }


def test_type_a_order() -> None:
    assert type_a_word(3) == (1, 2, 1, 3, 2, 1)
    assert [type_a_position(i, j) for i, j in [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]] == list(range(6))


def test_type_a_generators(subtests: SubTests, a3: QuantumAlgebra) -> None:
    pbw = a3.pbw
    for i, j in [(1, 3), (2, 4), (1, 4)]:
        with subtests.test(f"E_{i},{j}"):
            assert a3.equal(pbw.type_a_vector(i, j), pbw.type_a_recursive(i, j))


def test_type_a_commutation(a3: QuantumAlgebra) -> None:
    pbw = a3.pbw
    q = a3.ring.qpow
    E = pbw.type_a_vector
    assert a3.equal(E(1, 3) * E(2, 4) - E(2, 4) * E(1, 3), E(2, 3) * E(1, 4) * (q(-1) - q(1)))
    assert a3.equal(E(1, 4) * E(1, 3), E(1, 3) * E(1, 4) * q(1))
    assert a3.equal(E(2, 4) * E(1, 4), E(1, 4) * E(2, 4) * q(1))


def test_type_a_straightening(subtests: SubTests, a3: QuantumAlgebra) -> None:
    pbw = a3.pbw
    E = pbw.type_a_vector
    for label, x in [
        ("crossing", E(2, 4) * E(1, 3)),
        ("adjacent", a3.E(3) * a3.E(2) * a3.E(1)),
        ("mixed", a3.E(2) * a3.E(1) * a3.E(2) + a3.E(3) * a3.E(1)),
    ]:
        with subtests.test(label):
            assert pbw.straighten(x) == pbw.coordinates(x)


def test_derived_straightening(b2: QuantumAlgebra) -> None:
    pbw = b2.pbw
    x = b2.E(2) * b2.E(1) * b2.E(1)
    assert pbw.straighten(x, (1, 2, 1, 2)) == pbw.coordinates(x, (1, 2, 1, 2))


def test_straightening_unsupported() -> None:
    algebra = QuantumAlgebra(cartan_type("G2"))
    with pytest.raises(UnsupportedType):
        algebra.pbw.straighten(algebra.E(1))


def test_type_a_coproduct(a2: QuantumAlgebra) -> None:
    pbw = a2.pbw
    assert a2.tensor_equal(pbw.type_a_coproduct(1, 3), a2.coproduct(pbw.type_a_vector(1, 3)))
    first, _, last = pbw.type_a_tensor_terms(1, 3)
    assert a2.tensor_equal(first * last, last * first * a2.ring.qpow(-2))


def test_type_a_only(b2: QuantumAlgebra) -> None:
    with pytest.raises(UnsupportedType):
        b2.pbw.type_a_vector(1, 2)


class TestRank2:
    def test_needs_rank_two(self, a3: QuantumAlgebra) -> None:
        with pytest.raises(UnsupportedType):
            Rank2(a3.pbw)

    def test_words(self, b2: QuantumAlgebra) -> None:
        library = Rank2(b2.pbw)
        assert (library.i, library.j, library.e, library.m) == (1, 2, 2, 4)
        assert library.z_ij == (1, 2, 1, 2)
        assert library.b(3) == (2, 1, 2)

    def test_f_exponents(self, a2: QuantumAlgebra, b2: QuantumAlgebra) -> None:
        assert Rank2(a2.pbw).f((1, 0, 1)) == 1
        assert Rank2(a2.pbw).f((0, 1, 0)) == 1
        assert Rank2(b2.pbw).f((1, 0, 0, 1)) == 2
        assert Rank2(b2.pbw).f((0, 0, 1, 0)) == 2

    def test_expansion(self, subtests: SubTests, a2: QuantumAlgebra, b2: QuantumAlgebra) -> None:
        for algebra in (a2, b2):
            library = Rank2(algebra.pbw)
            with subtests.test(algebra.cartan.type_label):
                assert algebra.equal(library.lhs(1, 1), library.element(library.expand(1, 1)))
            with subtests.test(f"{algebra.cartan.type_label} ordinary"):
                assert algebra.equal(
                    library.lhs(1, 1, ordinary=True),
                    library.element(library.expand(1, 1, ordinary=True), divided=False),
                )

    def test_bracket(self, subtests: SubTests, a2: QuantumAlgebra, b2: QuantumAlgebra) -> None:
        for algebra in (a2, b2):
            library = Rank2(algebra.pbw)
            ring = algebra.ring
            for M, N in [(1, 1), (2, 1), (1, 2), (2, 2)]:
                expected = qfact(M, 1, ring) * qfact(N, library.e, ring)
                for ks in library.exponent_set(M, N):
                    with subtests.test(f"{algebra.cartan.type_label} {ks}"):
                        assert library.bracket(ks) == expected / algebra.pbw.psi_factorial(library.psi(ks))

    def test_divided_expansion(self, subtests: SubTests, a2: QuantumAlgebra, b2: QuantumAlgebra) -> None:
        for algebra in (a2, b2):
            library = Rank2(algebra.pbw)
            for which in ("a", "ji", "ij", "b"):
                with subtests.test(f"{algebra.cartan.type_label} {which}"):
                    lhs, rhs = library.divided_expansion(1, which)
                    assert algebra.equal(lhs, rhs)

    def test_resum(self, a2: QuantumAlgebra) -> None:
        library = Rank2(a2.pbw)
        z = a2.ring(3)
        assert a2.equal(library.resum_lhs(1, 1, "i", z), library.element(library.resum(1, 1, "i", z)))

    def test_dictionary(self, a2: QuantumAlgebra, b2: QuantumAlgebra) -> None:
        library = Rank2(b2.pbw)
        assert library.dictionary("iij") == (1, 2)
        assert library.dictionary("j") == (1, 2, 1, 2)
        assert library.dictionary("i") == (1,)
        assert Rank2(a2.pbw).dictionary("j") == (1, 2, 1)
        with pytest.raises(ValueError):
            library.dictionary("iiij")

    def test_b2_relations(self, subtests: SubTests, b2: QuantumAlgebra) -> None:
        library = Rank2(b2.pbw)
        for which in ("gamma_delta", "one_tau", "one_nu"):
            for k, kp in [(1, 1), (1, 2), (2, 1), (2, 2)]:
                with subtests.test(f"{which} ({k},{kp})"):
                    lhs, rhs = library.b2_relation(which, k, kp)  # type: ignore[arg-type]
                    assert b2.equal(lhs, rhs)

    def test_b2_terms(self, a2: QuantumAlgebra, b2: QuantumAlgebra) -> None:
        library = Rank2(b2.pbw)
        ring = b2.ring
        q = ring.qpow
        two = q(1) + q(-1)
        assert library.b2_terms("one_tau", 1, 1) == {(0, 1, 0, 1): ring.one, (0, 0, 1, 0): -two}
        assert library.b2_terms("one_nu", 1, 1) == {(1, 0, 0, 1): q(-2), (0, 1, 0, 0): -ring.one}
        assert library.b2_terms("gamma_delta", 1, 1) == {(1, 0, 1, 0): ring.one, (0, 2, 0, 0): (q(2) - ring.one) / two}
        with pytest.raises(ValueError):
            library.b2_terms("nope", 1, 1)  # type: ignore[arg-type]
        with pytest.raises(UnsupportedType):
            Rank2(a2.pbw).b2_terms("one_tau", 1, 1)

    def test_straightening_word(self, a2: QuantumAlgebra, b2: QuantumAlgebra) -> None:
        assert b2.pbw.straightening_word() == (2, 1, 2, 1)
        assert a2.pbw.straightening_word() == a2.pbw.canonical_word()

    def test_b2_straightening(self, subtests: SubTests, b2: QuantumAlgebra) -> None:
        pbw = b2.pbw
        z = pbw.straightening_word()
        for word in [(1, 2), (1, 1, 2), (1, 2, 2), (2, 1, 1, 2), (1, 2, 1, 2), (1, 1, 2, 2), (1, 1, 1, 2)]:
            with subtests.test(str(word)):
                x = b2.E_word(word)
                assert pbw.straighten(x, z) == pbw.coordinates(x, z)

    def test_u_expansion_is_an_involution(self, subtests: SubTests, a2: QuantumAlgebra, b2: QuantumAlgebra) -> None:
        for algebra in (a2, b2):
            library = Rank2(algebra.pbw)
            ring = algebra.ring
            size = len(library.roots)
            for ks in [(1,) + (0,) * (size - 1), (0, 1) + (0,) * (size - 2), (1, 1) + (0,) * (size - 2)]:
                with subtests.test(f"{algebra.cartan.type_label} {ks}"):
                    back: dict = {}
                    for target, c in library.u_expansion(ks).items():
                        for source, d in library.u_expansion(target).items():
                            back[source] = back.get(source, ring.zero) + c * d
                    assert {k: v for k, v in back.items() if v} == {ks: ring.one}
