from __future__ import annotations

import pytest
from pytest_subtests import SubTests
from sympy import Integer, Symbol, cancel

from qgroups.coordrings import (
    P_GROUP,
    SO5,
    SO5_LISTED,
    ASTAlgebra,
    MFamily,
    antisymmetric_table,
    bruhat_ideal_A,
    bruhat_matches_kernel,
    inversions,
    iota_permutation,
    iso_verify_A,
    iso_verify_B2,
    m_family_classify,
    m_family_sweep,
    m_family_transform,
    p_group_ideals,
    p_group_sum_rule,
    random_m_parameters,
    random_m_transform,
    permutation_of_word,
    simple_matches_p_group,
    so5_bruhat_from_embedding,
    so5_bruhat_ideal,
    so5_embedding_checks,
    so5_modified_checks,
    t_n_ring,
    type_a_table,
    weyl_representative_checks,
)
from qgroups.coxeter import cartan_type
from qgroups.errors import ConstraintViolation
from qgroups.skewcenter import SkewCenter
from qgroups.uqcore import QuantumAlgebra


def assert_report(report: dict[str, bool], subtests: SubTests) -> None:
    assert report
    for label, ok in report.items():
        with subtests.test(label):
            assert ok


def test_so5_group_law(subtests: SubTests) -> None:
    assert_report(SO5.coassociative(), subtests)
    assert_report(SO5.counital(), subtests)
    assert_report(SO5.graded(), subtests)
    assert_report(SO5.same_coproducts(SO5_LISTED), subtests)


def test_so5_matrices_multiply() -> None:
    assert so5_embedding_checks()["homomorphism"]


def test_weyl_representatives(subtests: SubTests) -> None:
    assert_report(weyl_representative_checks(), subtests)


def test_iota() -> None:
    assert iota_permutation((1, 2)) == (4, 1, 3, 5, 2)
    assert inversions(iota_permutation((1, 2))) == {(1, 4), (2, 3), (2, 4), (2, 5), (3, 4)}
    assert inversions(iota_permutation(())) == set()


def test_so5_bruhat_ideals() -> None:
    assert so5_bruhat_ideal(()) == set()
    assert so5_bruhat_ideal((1,)) == {"a"}
    assert so5_bruhat_ideal((2,)) == {"b"}
    assert so5_bruhat_ideal((1, 2)) == {"a", "d"}
    assert so5_bruhat_ideal((2, 1)) == {"b", "c"}
    assert so5_bruhat_ideal((1, 2, 1)) == {"a", "c", "d"}
    assert so5_bruhat_ideal((2, 1, 2)) == {"b", "c", "d"}


def test_so5_bruhat_from_matrix_entries(subtests: SubTests) -> None:
    assert_report(so5_bruhat_from_embedding((1,)), subtests)


def test_modified_generators(subtests: SubTests) -> None:
    assert_report(so5_modified_checks(0), subtests)


def test_m_family_coassociativity() -> None:
    assert MFamily(1, 0, 1, 0).coassociative()
    assert MFamily(0, 1, 0, 1).coassociative()
    assert not MFamily(1, 0, 1, 0, r=Integer(0)).coassociative()
    assert not MFamily(0, 1, 0, 1, s=Integer(0)).coassociative()
    assert not MFamily(1, 0, 0, 1).coassociative()
    assert not MFamily(1, 0, 0, 1).constraints()["vx = uy"]
    assert not MFamily(0, 1, 0, 1, s=Integer(0)).constraints()["s = vy/2"]

    u, v, x = Symbol("u"), Symbol("v"), Symbol("x")
    family = MFamily(u, v, x, v * x / u)
    assert all(family.constraints().values())


def test_m_family_classify() -> None:
    assert m_family_classify(1, 0, 1, 0) == (1, 0, 1, 0)
    assert m_family_classify(1, 0, 0, 0) == (1, 0, 0, 0)
    assert m_family_classify(0, 0, 1, 0) == (0, 0, 1, 0)
    assert m_family_classify(1, 1, 3, 3) == (0, 0, 0, 0)
    with pytest.raises(ConstraintViolation):
        m_family_classify(0, 1, 1, 0)


def test_m_family_transform() -> None:
    one, zero = Integer(1), Integer(0)
    assert m_family_transform((one, zero, one, zero), one, one, zero, zero) == (1, 0, 1, 0)
    assert m_family_transform((one, zero, zero, zero), 2, 1, 3, 0) == (5, 3, 0, 0)
    with pytest.raises(ConstraintViolation):
        m_family_transform((one, zero, one, zero), one, one, one, zero)
    with pytest.raises(ConstraintViolation):
        m_family_transform((one, zero, one, zero), zero, one, zero, zero)


def test_m_family_sweep(subtests: SubTests) -> None:
    report = m_family_sweep(50)
    assert len([key for key in report if not key.endswith("coassociative")]) > 1
    assert_report(report, subtests)


def test_random_m_transform_is_admissible() -> None:
    for _ in range(20):
        params = random_m_parameters()
        u, v, x, y = params
        assert v * x == u * y
        sigma, mu, eta, tau = random_m_transform(params)
        assert sigma != 0 and mu != 0
        assert mu * eta * (x - y) == sigma * tau * (u - v)


@pytest.mark.parametrize("ell", [3, 8])
def test_b2_identification(ell: int, subtests: SubTests) -> None:
    assert_report(iso_verify_B2(ell), subtests)


@pytest.mark.parametrize("ell", [3, 6])
def test_type_a_identification(ell: int, subtests: SubTests) -> None:
    assert_report(iso_verify_A(3, ell), subtests)


def test_type_a_table() -> None:
    assert type_a_table(6)[0] == "antisymmetric"
    assert type_a_table(4)[0] == "symmetric"
    assert type_a_table(5)[0] == "symmetric"


def test_permutations() -> None:
    assert permutation_of_word((1, 2), 3) == (2, 3, 1)
    assert bruhat_ideal_A((2, 1, 3)) == {(1, 2)}
    assert bruhat_ideal_A((3, 2, 1)) == {(1, 2), (1, 3), (2, 3)}
    with pytest.raises(ValueError):
        bruhat_ideal_A((1, 1, 2))


def test_bruhat_matches_kernel() -> None:
    for word in ((1,), (2, 1), (1, 2, 1)):
        assert bruhat_matches_kernel(word, 3)
    assert bruhat_matches_kernel((1, 2, 3, 1), 4)


@pytest.mark.parametrize("table", [None, antisymmetric_table])
def test_ast_hopf_structure(table: object, subtests: SubTests) -> None:
    algebra = t_n_ring(2) if table is None else ASTAlgebra(2, antisymmetric_table)
    assert_report(algebra.verify_bialgebra(), subtests)
    assert_report(algebra.verify_antipode(), subtests)
    assert_report(algebra.cosolvable_filtration(), subtests)


def test_ast_antipode_n2() -> None:
    algebra = ASTAlgebra(2, antisymmetric_table)
    expected = algebra.add(algebra.normal_form([(1, 1, -1), (1, 2, 1), (2, 2, -1)]), scale=[-1])
    assert algebra.equal(algebra.antipode_generator(1, 2), expected)
    assert algebra.equal(algebra.antipode_generator(1, 1), algebra.R(1, 1, -1))


def test_ast_commutation() -> None:
    algebra = ASTAlgebra(2, antisymmetric_table)
    r11r12 = algebra.normal_form([(1, 1, 1), (1, 2, 1)])
    r12r11 = algebra.normal_form([(1, 2, 1), (1, 1, 1)])
    assert algebra.equal(r12r11, algebra.add(r11r12, scale=[-1]))
    assert algebra.m_degree(next(iter(algebra.R(1, 2)))) == (-1, 1)
    assert algebra.counit(algebra.R(1, 2)) == 0
    assert algebra.counit(algebra.R(2, 2)) == 1


def test_ast_table_checked() -> None:
    with pytest.raises(ConstraintViolation):
        ASTAlgebra(2, lambda i, j: Integer(2))
    with pytest.raises(ValueError):
        t_n_ring(2).R(1, 2, -1)


def test_t3_antipode(subtests: SubTests) -> None:
    algebra = t_n_ring(3)
    assert_report(algebra.verify_antipode(), subtests)
    assert_report(algebra.cosolvable_filtration(), subtests)


def test_p_group() -> None:
    assert all(P_GROUP.coassociative().values())
    lam, x = P_GROUP.symbols().values()
    antipode = P_GROUP.antipode
    assert cancel(antipode["lam"] - 1 / lam) == 0
    assert cancel(antipode["x"] + x / lam) == 0


def test_p_group_ideals(subtests: SubTests) -> None:
    ideals = p_group_ideals(3, 2)
    assert_report(P_GROUP.is_hopf_ideal([ideals["F"]]), subtests)
    assert_report(P_GROUP.is_hopf_ideal([ideals["J"]]), subtests)

    x = P_GROUP.symbols()["x"]
    report = P_GROUP.is_hopf_ideal([x - 1])
    assert not report["ε(f0)"]


def test_p_group_sum_rule() -> None:
    assert p_group_sum_rule(4, 6)
    assert p_group_sum_rule(5, 3)


def test_simple_generators_match_p_group() -> None:
    center = SkewCenter(QuantumAlgebra(cartan_type("A2"), 3))
    assert simple_matches_p_group(center, 1)
    assert simple_matches_p_group(center, 2)
