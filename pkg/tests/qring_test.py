from __future__ import annotations

from fractions import Fraction

import pytest
from pytest_subtests import SubTests

from qgroups.coxeter import cartan_type
from qgroups.errors import InvalidRootOfUnity, PoleError
from qgroups.qring import (
    a_nstk,
    a_nstk_recursive,
    c_prime_sum,
    cyclotomic_ring,
    gauss_product,
    gauss_sum,
    generic_ring,
    inverse_q_difference,
    is_integral,
    is_laurent,
    last_factorial,
    qbinom,
    qbinom_at_root,
    qdoublefact,
    qfact,
    qmultinom,
    qnum,
    root_of_unity,
    specialize,
)


def test_quantum_numbers() -> None:
    ring = generic_ring()
    q = ring.qpow
    assert qnum(0) == ring.zero
    assert qnum(1) == ring.one
    assert qnum(2) == q(1) + q(-1)
    assert qnum(3, 2) == q(4) + ring.one + q(-4)
    assert qnum(5) * (q(1) - q(-1)) == q(5) - q(-5)
    with pytest.raises(ValueError):
        qnum(-1)


def test_binomials(subtests: SubTests) -> None:
    for a in range(7):
        for b in range(a + 1):
            with subtests.test(f"[{a} {b}]"):
                assert qbinom(a, b) == qfact(a) / (qfact(b) * qfact(a - b))
                assert qbinom(a, b) == qbinom(a, a - b)
    assert qbinom(2, 3) == generic_ring().zero
    assert qmultinom([2, 1, 3]) == qfact(6) / (qfact(2) * qfact(1) * qfact(3))
    assert qdoublefact(5) == qnum(5) * qnum(3)
    assert qdoublefact(4, 2) == qnum(4, 2) * qnum(2, 2)


def test_gauss_binomial_theorem(subtests: SubTests) -> None:
    ring = generic_ring()
    z = ring.qpow(5) + ring(Fraction(1, 3))
    for a in range(5):
        with subtests.test(str(a)):
            assert gauss_sum(a, z) == gauss_product(a, z)


def test_bar_involution() -> None:
    ring = generic_ring()
    x = ring.qpow(2) + ring(3) * ring.qpow(-1)
    assert ring.conj(x) == ring.qpow(-2) + ring(3) * ring.qpow(1)
    assert ring.conj(ring.one / (ring.qpow(1) + ring(2))) == ring.one / (ring.qpow(-1) + ring(2))
    assert ring.conj(qnum(4)) == qnum(4)

    cyclotomic = cyclotomic_ring(5)
    zeta = cyclotomic.q
    assert cyclotomic.conj(zeta) == cyclotomic.qpow(-1)
    assert cyclotomic.conj(zeta + cyclotomic(2)) * zeta == cyclotomic.one + cyclotomic(2) * zeta


def test_text() -> None:
    ring = generic_ring()
    assert ring.to_text(ring.qpow(2) - ring(2) * ring.qpow(-1)) == "q^2 - 2*q^-1"
    assert ring.to_text(ring(Fraction(-3, 2))) == "-3/2"
    assert ring.to_text(ring.zero) == "0"
    assert cyclotomic_ring(3).to_text(cyclotomic_ring(3).qpow(2)) == "-z - 1"


def test_subrings() -> None:
    ring = generic_ring()
    assert is_integral(qnum(3) * ring.qpow(-7))
    assert is_laurent(ring(Fraction(1, 2)) * ring.qpow(3))
    assert not is_integral(ring(Fraction(1, 2)))
    assert not is_laurent(ring.one / (ring.qpow(1) + ring.one))


def test_cyclotomic_ring() -> None:
    ring = cyclotomic_ring(3)
    assert ring.qpow(3) == ring.one
    assert ring.qpow(-1) == ring.qpow(2)
    assert qnum(3, 1, ring) == ring.zero
    assert qnum(2, 1, cyclotomic_ring(4)) == cyclotomic_ring(4).zero
    with pytest.raises(ValueError):
        cyclotomic_ring(0)


def test_specialize() -> None:
    ring = cyclotomic_ring(5)
    assert specialize(qnum(5), ring) == ring.zero
    assert specialize(qnum(2), ring) == ring.qpow(1) + ring.qpow(-1)
    with pytest.raises(PoleError):
        specialize(generic_ring().one / qnum(5), ring)


def test_root_of_unity_context() -> None:
    ctx = root_of_unity(cartan_type("B2"), 8)
    assert (ctx.ell_bar, ctx.ell_bar_d(1), ctx.ell_bar_d(2)) == (4, 4, 2)
    assert ctx.ell_d(2) == 4
    assert (ctx.frak_d, ctx.frak_n) == (2, 1)
    odd = root_of_unity(cartan_type("B2"), 5)
    assert (odd.ell_bar, odd.frak_d, odd.frak_n) == (5, 1, 2)
    assert odd.xi(1) == 1
    assert odd.xi_hat(1) == odd.ring.one

    with pytest.raises(InvalidRootOfUnity):
        root_of_unity(cartan_type("B2"), 4)
    with pytest.raises(InvalidRootOfUnity):
        root_of_unity(cartan_type("G2"), 8)
    assert root_of_unity(cartan_type("G2"), 8, guarded=False).ell_bar == 4


def test_inverse_q_difference(subtests: SubTests) -> None:
    for ell, m in ((3, 1), (5, 1), (5, 2), (8, 1), (8, 3), (12, 2)):
        with subtests.test(f"ℓ={ell} m={m}"):
            ctx = root_of_unity(cartan_type("A1"), ell)
            ring = ctx.ring
            assert inverse_q_difference(m, ctx) * (ring.qpow(m) - ring.qpow(-m)) == ring.one
    with pytest.raises(PoleError):
        inverse_q_difference(2, root_of_unity(cartan_type("A1"), 4))


def test_last_factorial(subtests: SubTests) -> None:
    for ell in (3, 4, 5, 6):
        with subtests.test(f"ℓ={ell}"):
            ctx = root_of_unity(cartan_type("A1"), ell)
            assert last_factorial(ctx) == qfact(ctx.ell_bar - 1, 1, ctx.ring)


def test_binomials_at_odd_roots(subtests: SubTests) -> None:
    for ell in (3, 5):
        ctx = root_of_unity(cartan_type("A1"), ell)
        for u in range(7):
            for v in range(7):
                with subtests.test(f"ℓ={ell} [{u + v} {u}]"):
                    assert qbinom_at_root(u, v, 1, ctx) == qbinom(u + v, u, 1, ctx.ring)


def test_multinomial_recursion(subtests: SubTests) -> None:
    for n in range(5):
        for s in range(n + 1):
            for t in range(min(s, n - s) + 1):
                for k in range(n - s - t + 1):
                    with subtests.test(f"a({n},{s},{t},{k})"):
                        assert a_nstk(n, s, t, k) == a_nstk_recursive(n, s, t, k)


def test_multinomial_bounds() -> None:
    ring = generic_ring()
    assert a_nstk(0, 0, 0, 0) == ring.one
    assert a_nstk(2, 1, 0, 0) == ring.one + ring.qpow(-2)
    assert a_nstk(2, 3, 0, 0) == ring.zero
    assert a_nstk(2, 1, 2, 0) == ring.zero
    assert a_nstk(2, 1, 0, 2) == ring.zero
    assert a_nstk_recursive(1, -1, 0, 0) == ring.zero


def test_c_prime_sum(subtests: SubTests) -> None:
    for n in range(9):
        with subtests.test(n):
            left, right = c_prime_sum(n)
            assert left == right
