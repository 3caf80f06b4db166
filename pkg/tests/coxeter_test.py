from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from pytest_subtests import SubTests

from qgroups.coxeter import CartanData, build_root_system, cartan_type, rank2_tables
from qgroups.errors import NotPrefix, NotReduced, RootSystemError, UnsupportedType


def test_cartan_types(subtests: SubTests) -> None:
    for label, positive in {
        "A1": 1,
        "A2": 3,
        "A3": 6,
        "B2": 4,
        "C2": 4,
        "G2": 6,
        "B3": 9,
        "C3": 9,
        "D4": 12,
        "F4": 24,
        "E6": 36,
    }.items():
        with subtests.test(label):
            assert len(build_root_system(cartan_type(label)).positive) == positive


def test_cartan_data() -> None:
    b2 = cartan_type("B2")
    assert b2.A == ((2, -2), (-1, 2))
    assert b2.d == (1, 2)
    assert (b2.e, b2.e_star, b2.family) == (2, 3, "B")
    assert cartan_type("C2").family == "B"
    assert cartan_type("c3").type_label == "C3"
    assert [b2.m(1, 2), cartan_type("A2").m(1, 2), cartan_type("G2").m(2, 1), cartan_type("A3").m(1, 3)] == [4, 3, 6, 2]
    assert cartan_type("G2").B == ((2, -3), (-3, 6))


def test_invalid_cartan_data(subtests: SubTests) -> None:
    for label in ("X3", "B1", "D3", "E9", "F3", "G3", ""):
        with subtests.test(label or "empty"):
            with pytest.raises(RootSystemError):
                cartan_type(label)
    with pytest.raises(RootSystemError):
        CartanData(type_label="bad", A=((2, -1), (-2, 2)), d=(1, 1))
    with pytest.raises(RootSystemError):
        CartanData(type_label="bad", A=((2, 1), (1, 2)), d=(1, 1))


def test_weyl_groups(subtests: SubTests) -> None:
    for label, order in {"A1": 2, "A2": 6, "B2": 8, "G2": 12, "A3": 24}.items():
        with subtests.test(label):
            system = build_root_system(cartan_type(label))
            assert len(system.elements) == order
            assert system.length(system.longest) == len(system.positive)
            assert system.elements[0] == system.identity
            assert system.elements[-1] == system.longest
            for s in system.elements:
                assert system.inverse(s) * s == system.identity
                assert system.element(system.reduced_word(s)) == s
                assert len(system.inversion_set(s)) == system.length(s)


def test_theta() -> None:
    system = build_root_system(cartan_type("B2"))
    for s in system.elements:
        roots = system.inversion_set(s)
        assert system.theta(s) == tuple(sum(b[k] for b in roots) for k in range(2))
    assert system.theta(system.longest) == tuple(int(2 * c) for c in system.rho)


def test_length_defect() -> None:
    system = build_root_system(cartan_type("A2"))
    for a in system.elements:
        for b in system.elements:
            expected = system.length(a) + system.length(b) - 2 * system.length_defect(a, b)
            assert system.length(a * b) == expected


def test_inversion_sequence() -> None:
    system = build_root_system(cartan_type("A2"))
    assert system.inversion_sequence((1, 2, 1)) == [(1, 0), (1, 1), (0, 1)]
    assert system.gamma((1, 2)) == (1, 1)
    assert system.is_reduced((1, 2, 1))
    assert not system.is_reduced((1, 2, 1, 2))
    with pytest.raises(NotReduced):
        system.inversion_sequence((1, 1))
    with pytest.raises(NotReduced):
        system.gamma(())
    with pytest.raises(ValueError):
        system.inversion_sequence((3,))


def test_maximal_words(subtests: SubTests) -> None:
    for label, count in {"A2": 2, "B2": 2, "G2": 2, "A3": 16}.items():
        with subtests.test(label):
            system = build_root_system(cartan_type(label))
            words = system.maximal_words()
            assert len(words) == count
            assert all(system.is_maximal(z) for z in words)
    with pytest.raises(UnsupportedType):
        build_root_system(cartan_type("A5")).maximal_words()


def test_convex_orders(subtests: SubTests) -> None:
    for label in ("A2", "B2", "G2", "A3"):
        system = build_root_system(cartan_type(label))
        for z in system.maximal_words():
            with subtests.test(f"{label} {z}"):
                order = system.convex_order(z)
                assert system.is_convex(order)
                assert system.word_from_order(order) == z
                assert system.convex_order(system.dagger(z)) == order[::-1]

    a2 = build_root_system(cartan_type("A2"))
    assert not a2.is_convex([(1, 0), (0, 1), (1, 1)])
    with pytest.raises(NotReduced):
        a2.convex_order((1, 2))


def test_matsumoto_paths() -> None:
    system = build_root_system(cartan_type("A3"))
    words = system.maximal_words()
    for w, w2 in combinations(words[:6], 2):
        path = system.matsumoto_path(w, w2)
        assert path is not None
        current = w
        for move in path:
            p = move.position
            assert current[p : p + len(move.before)] == move.before
            current = current[:p] + move.after + current[p + len(move.before) :]
        assert current == w2

    a2 = build_root_system(cartan_type("A2"))
    assert [move.before for move in a2.matsumoto_path((1, 2, 1), (2, 1, 2)) or []] == [(1, 2, 1)]
    assert a2.matsumoto_path((1, 2), (2, 1)) is None
    assert a2.matsumoto_path((1, 2), (1, 2)) == []


def test_duality(subtests: SubTests) -> None:
    for label, eta in {"A1": (1,), "A3": (3, 2, 1), "B2": (1, 2), "D4": (1, 2, 3, 4), "D5": (1, 2, 3, 5, 4)}.items():
        with subtests.test(label):
            assert build_root_system(cartan_type(label)).eta == eta

    a2 = build_root_system(cartan_type("A2"))
    assert a2.dagger((1, 2, 1)) == (2, 1, 2)
    duality = a2.eta_and_perp((1,))
    assert duality.perp == a2.element((1, 1, 2, 1))
    assert duality.dagger == a2.reflection(2)
    with pytest.raises(NotPrefix):
        a2.complementary((2,), (1, 2, 1))
    with pytest.raises(NotReduced):
        a2.complementary((1,), (1, 2))


def test_maximal_extension() -> None:
    system = build_root_system(cartan_type("B2"))
    z = system.maximal_extension((2,))
    assert z[:1] == (2,)
    assert system.is_maximal(z)


def test_box_words(subtests: SubTests) -> None:
    for label in ("A3", "B2", "G2"):
        with subtests.test(label):
            system = build_root_system(cartan_type(label))
            z = system.box_maximal_word()
            assert system.is_maximal(z)
            assert system.refines_box_preorder(system.convex_order(z))
    with pytest.raises(UnsupportedType):
        build_root_system(cartan_type("D4")).box_maximal_word()


def test_rank2_tables() -> None:
    tables = rank2_tables(build_root_system(cartan_type("A2")))
    assert tables.rho_s[1] == (Fraction(-1, 2), Fraction(0))
    assert tables.rho_s[2] == (Fraction(0), Fraction(-1, 2))
    with pytest.raises(UnsupportedType):
        rank2_tables(build_root_system(cartan_type("A3")))
