"""Exact coefficient rings and quantum-number identities.

Generic scalars live in ``QQ(q)``; scalars at a root of unity live in the cyclotomic
field ``QQ(ζ) = QQ[q]/Φ_ℓ``. Both are sympy domains, so values can be handed to
``DomainMatrix`` unchanged.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, cached_property
from math import comb, gcd
from typing import Any, Sequence

from sympy import QQ, I, Poly, Symbol, cyclotomic_poly, exp, pi

from .coxeter import CartanData
from .config import check_root_of_unity
from .errors import PoleError

logger = logging.getLogger(__name__)

Q = Symbol("q")

Scalar = Any
"""An element of ``QQ(q)`` (``FracElement``) or of ``QQ(ζ)`` (``ANP``)."""


class ScalarRing:
    """Common interface of the generic and the cyclotomic coefficient field."""

    ell: int
    dom: Any
    q: Scalar

    @property
    def one(self) -> Scalar:
        return self.dom.one

    @property
    def zero(self) -> Scalar:
        return self.dom.zero

    @property
    def generic(self) -> bool:
        return self.ell == 0

    def __call__(self, value: int | Fraction | Scalar) -> Scalar:
        if isinstance(value, Fraction):
            return self.dom.convert_from(QQ(value.numerator, value.denominator), QQ)
        if isinstance(value, int):
            return self.dom.convert(value)
        return value

    def qpow(self, k: int) -> Scalar:
        return self._qpow(k)

    def _qpow(self, k: int) -> Scalar:
        raise NotImplementedError

    def conj(self, x: Scalar) -> Scalar:
        """The bar involution q ↦ q⁻¹."""
        raise NotImplementedError

    def is_zero(self, x: Scalar) -> bool:
        return not x

    def equal(self, x: Scalar, y: Scalar) -> bool:
        return not (x - y)

    def to_text(self, x: Scalar) -> str:
        raise NotImplementedError

    def to_parts(self, x: Scalar) -> tuple[list[tuple[int, Fraction]], list[tuple[int, Fraction]]]:
        """Numerator and denominator as (exponent, coefficient) pairs."""
        raise NotImplementedError

    def from_parts(
        self, numer: Sequence[tuple[int, Fraction]], denom: Sequence[tuple[int, Fraction]]
    ) -> Scalar:
        top = sum((self(c) * self.qpow(e) for e, c in numer), self.zero)
        bottom = sum((self(c) * self.qpow(e) for e, c in denom), self.zero)
        if not bottom:
            raise PoleError("zero denominator")
        return top / bottom


class GenericScalars(ScalarRing):
    def __init__(self) -> None:
        self.ell = 0
        self.dom = QQ.frac_field(Q)
        self.q = self.dom.gens[0]
        self._powers: dict[int, Scalar] = {}

    def _qpow(self, k: int) -> Scalar:
        if k not in self._powers:
            self._powers[k] = self.q**k
        return self._powers[k]

    def laurent_terms(self, x: Scalar) -> dict[int, Fraction] | None:
        """Exponent → coefficient when x is a Laurent polynomial, else None."""
        denom = x.denom.terms()
        if len(denom) != 1:
            return None
        (shift,), lead = denom[0]
        return {e - shift: _fraction(c) / _fraction(lead) for (e,), c in x.numer.terms()}

    def conj(self, x: Scalar) -> Scalar:
        return self._evaluate(x.numer, inverse=True) / self._evaluate(x.denom, inverse=True)

    def _evaluate(self, poly: Any, *, inverse: bool) -> Scalar:
        total = self.zero
        for (e,), c in poly.terms():
            total += self(_fraction(c)) * self.qpow(-e if inverse else e)
        return total

    def to_text(self, x: Scalar) -> str:
        terms = self.laurent_terms(x)
        if terms is not None:
            return format_laurent(terms, "q")
        numer = format_laurent({e: _fraction(c) for (e,), c in x.numer.terms()}, "q")
        if x.denom == x.denom.ring.one:
            return numer
        denom = format_laurent({e: _fraction(c) for (e,), c in x.denom.terms()}, "q")
        return f"({numer})/({denom})"

    def to_parts(self, x: Scalar) -> tuple[list[tuple[int, Fraction]], list[tuple[int, Fraction]]]:
        return (
            [(e, _fraction(c)) for (e,), c in x.numer.terms()],
            [(e, _fraction(c)) for (e,), c in x.denom.terms()],
        )

    def __repr__(self) -> str:
        return "GenericScalars()"


class CyclotomicScalars(ScalarRing):
    def __init__(self, ell: int) -> None:
        if ell < 1:
            raise ValueError("ell must be positive")
        self.ell = ell
        x = Symbol("x")
        minpoly = Poly(cyclotomic_poly(ell, x), x)
        self.dom = QQ.algebraic_field((minpoly, exp(2 * pi * I / ell)), alias="zeta")
        self.q = self.dom.unit
        self._powers = [self.q**k for k in range(ell)]
        logger.debug("cyclotomic field of order %d, degree %d", ell, minpoly.degree())

    def _qpow(self, k: int) -> Scalar:
        return self._powers[k % self.ell]

    def conj(self, x: Scalar) -> Scalar:
        total = self.zero
        coeffs = x.to_list()
        degree = len(coeffs) - 1
        for k, c in enumerate(coeffs):
            if c:
                total += self(_fraction(c)) * self.qpow(-(degree - k))
        return total

    def coefficients(self, x: Scalar) -> list[Fraction]:
        """Coefficients in the power basis 1, ζ, ζ², … (low to high)."""
        return [_fraction(c) for c in reversed(x.to_list())]

    def to_text(self, x: Scalar) -> str:
        return format_laurent(dict(enumerate(self.coefficients(x))), "z")

    def to_parts(self, x: Scalar) -> tuple[list[tuple[int, Fraction]], list[tuple[int, Fraction]]]:
        return [(k, c) for k, c in enumerate(self.coefficients(x)) if c], [(0, Fraction(1))]

    def __repr__(self) -> str:
        return f"CyclotomicScalars({self.ell})"


def _fraction(c: Any) -> Fraction:
    return Fraction(int(QQ.numer(QQ.convert(c))), int(QQ.denom(QQ.convert(c))))


def format_laurent(terms: dict[int, Fraction], symbol: str) -> str:
    """Render Σ c_k x^k, highest power first, in the element grammar."""
    parts: list[str] = []
    for k in sorted(terms, reverse=True):
        c = terms[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        power = "" if k == 0 else symbol if k == 1 else f"{symbol}^{k}"
        if not power:
            body = str(c)
        elif c == 1:
            body = power
        else:
            body = f"{c}*{power}"
        parts.append(f" {sign} {body}" if parts else ("-" + body if sign == "-" else body))
    return "".join(parts) or "0"


@cache
def generic_ring() -> GenericScalars:
    return GenericScalars()


@cache
def cyclotomic_ring(ell: int) -> CyclotomicScalars:
    return CyclotomicScalars(ell)


def ring_for(ell: int) -> ScalarRing:
    return generic_ring() if ell == 0 else cyclotomic_ring(ell)


# quantum numbers


def _check(*values: int) -> None:
    if any(v < 0 for v in values):
        raise ValueError(f"quantum numbers need nonnegative arguments, got {values}")


@cache
def qnum(a: int, d: int = 1, ring: ScalarRing | None = None) -> Scalar:
    """[a]_{q^d} = Σ_k q^{d(a−1−2k)}."""
    _check(a)
    ring = ring or generic_ring()
    total = ring.zero
    for k in range(a):
        total += ring.qpow(d * (a - 1 - 2 * k))
    return total


@cache
def qfact(a: int, d: int = 1, ring: ScalarRing | None = None) -> Scalar:
    _check(a)
    ring = ring or generic_ring()
    value = ring.one
    for k in range(1, a + 1):
        value *= qnum(k, d, ring)
    return value


@cache
def qbinom(a: int, b: int, d: int = 1, ring: ScalarRing | None = None) -> Scalar:
    """Quantum binomial by the Pascal recursion, so it also evaluates at ζ without division."""
    _check(a, b)
    ring = ring or generic_ring()
    if b > a:
        return ring.zero
    if b == 0 or b == a:
        return ring.one
    return ring.qpow(d * b) * qbinom(a - 1, b, d, ring) + ring.qpow(-d * (a - b)) * qbinom(a - 1, b - 1, d, ring)


def qmultinom(parts: Sequence[int], d: int = 1, ring: ScalarRing | None = None) -> Scalar:
    _check(*parts)
    ring = ring or generic_ring()
    value = ring.one
    running = 0
    for part in parts:
        running += part
        value *= qbinom(running, part, d, ring)
    return value


@cache
def qdoublefact(a: int, d: int = 1, ring: ScalarRing | None = None) -> Scalar:
    """[a]!! = [a][a−2]⋯ down to [1] or [2]."""
    ring = ring or generic_ring()
    value = ring.one
    while a > 0:
        value *= qnum(a, d, ring)
        a -= 2
    return value


def gauss_sum(a: int, z: Scalar, ring: ScalarRing | None = None) -> Scalar:
    """Σ_k q^{−k(a+1)} [a choose k] z^k."""
    _check(a)
    ring = ring or generic_ring()
    return sum((ring.qpow(-k * (a + 1)) * qbinom(a, k, 1, ring) * z**k for k in range(a + 1)), ring.zero)


def gauss_product(a: int, z: Scalar, ring: ScalarRing | None = None) -> Scalar:
    """q^{−binom(a+1, 2)} Π_{t=1}^{a} (q^t + q^{−t} z)."""
    _check(a)
    ring = ring or generic_ring()
    value = ring.qpow(-comb(a + 1, 2))
    for t in range(1, a + 1):
        value *= ring.qpow(t) + ring.qpow(-t) * z
    return value


def brace_ratio(k: int, e: int, ring: ScalarRing | None = None) -> Scalar:
    """{k:e} = Π_{s=1}^{k} [e]_{q^s}."""
    _check(k)
    ring = ring or generic_ring()
    value = ring.one
    for s in range(1, k + 1):
        value *= qnum(e, s, ring)
    return value


def bracket_ratio_ii(k: int, e: int, ring: ScalarRing | None = None) -> Scalar:
    """[k:e]_ii = Π_{s<k} Π_{0<t<e} [se + t]."""
    _check(k)
    ring = ring or generic_ring()
    value = ring.one
    for s in range(k):
        for t in range(1, e):
            value *= qnum(s * e + t, 1, ring)
    return value


def is_laurent(x: Scalar) -> bool:
    return generic_ring().laurent_terms(x) is not None


def is_integral(x: Scalar) -> bool:
    """True when x lies in ℤ[q, q⁻¹]."""
    terms = generic_ring().laurent_terms(x)
    return terms is not None and all(c.denominator == 1 for c in terms.values())


def is_gaussian_integer(x: Scalar, ring: CyclotomicScalars) -> bool:
    """True when x lies in ℤ[√−1] ∩ QQ(ζ)."""

    def at(coefficients: list[Fraction], n: int) -> Fraction:
        return coefficients[n] if n < len(coefficients) else Fraction(0)

    coefficients = ring.coefficients(x)
    if not any(coefficients[1:]):
        return at(coefficients, 0).denominator == 1
    if ring.ell % 4:
        return False
    unit = ring.qpow(ring.ell // 4)
    unit_coefficients = ring.coefficients(unit)
    k = next(n for n in range(1, len(unit_coefficients)) if unit_coefficients[n])
    b = at(coefficients, k) / unit_coefficients[k]
    rest = ring.coefficients(x - ring(b) * unit)
    return b.denominator == 1 and not any(rest[1:]) and at(rest, 0).denominator == 1


# roots of unity


@dataclass(frozen=True)
class RootOfUnityContext:
    cartan: CartanData
    ell: int

    @cached_property
    def ring(self) -> CyclotomicScalars:
        return cyclotomic_ring(self.ell)

    @property
    def zeta(self) -> Scalar:
        return self.ring.q

    @property
    def ell_bar(self) -> int:
        """Order of ζ²."""
        return self.ell // gcd(self.ell, 2)

    def ell_d(self, d: int) -> int:
        """Order of ζ_d = ζ^d."""
        return self.ell // gcd(self.ell, d)

    def ell_bar_d(self, d: int) -> int:
        """Order of ζ_d²."""
        return self.ell // gcd(self.ell, 2 * d)

    def zeta_d(self, d: int) -> Scalar:
        return self.ring.qpow(d)

    def _sign(self, exponent: int) -> int:
        # ζ^k with ℓ | 2k
        assert (2 * exponent) % self.ell == 0
        return -1 if (2 * exponent // self.ell) % 2 else 1

    def xi(self, d: int) -> int:
        return self._sign(d * self.ell_bar_d(d))

    def xi_bar(self, d: int) -> int:
        return self._sign(d * self.ell_bar_d(d) ** 2)

    def xi_hat(self, d: int) -> Scalar:
        return self.ring.qpow(d * comb(self.ell_bar_d(d), 2))

    @property
    def frak_d(self) -> int:
        """𝖉 = gcd(ℓ̄, 𝐞)."""
        return gcd(self.ell_bar, self.cartan.e)

    @property
    def frak_n(self) -> int:
        """𝖓 = 𝐞/𝖉."""
        return self.cartan.e // self.frak_d

    def validate(self) -> RootOfUnityContext:
        check_root_of_unity(self.cartan, self.ell)
        return self


def root_of_unity(cartan: CartanData, ell: int, *, guarded: bool = True) -> RootOfUnityContext:
    ctx = RootOfUnityContext(cartan=cartan, ell=ell)
    return ctx.validate() if guarded else ctx


def specialize(x: Scalar, ctx: RootOfUnityContext | CyclotomicScalars) -> Scalar:
    """Image of a generic scalar under q ↦ ζ."""
    ring = ctx.ring if isinstance(ctx, RootOfUnityContext) else ctx
    numer = _evaluate_poly(x.numer, ring)
    denom = _evaluate_poly(x.denom, ring)
    if not denom:
        raise PoleError(f"denominator of {generic_ring().to_text(x)} vanishes at ζ of order {ring.ell}")
    return numer / denom


def _evaluate_poly(poly: Any, ring: ScalarRing) -> Scalar:
    total = ring.zero
    for (e,), c in poly.terms():
        total += ring(_fraction(c)) * ring.qpow(e)
    return total


def inverse_q_difference(m: int, ctx: RootOfUnityContext) -> Scalar:
    """(ζ^m − ζ^{−m})⁻¹ = −(1/r) Σ_{j<r−1} (r−j−1) ζ^{m(2j+1)}, r the order of ζ^{2m}."""
    ring = ctx.ring
    r = ctx.ell // gcd(ctx.ell, 2 * m)
    if r == 1:
        raise PoleError(f"ζ^{m} − ζ^{-m} vanishes for ℓ = {ctx.ell}")
    total = ring.zero
    for j in range(r - 1):
        total += ring(r - j - 1) * ring.qpow(m * (2 * j + 1))
    return -total / ring(r)


def last_factorial(ctx: RootOfUnityContext, d: int = 1) -> Scalar:
    """D_d = [ℓ̄_d − 1]!_d = ℓ̄_d ξ̂_d⁻¹ (ζ_d⁻¹ − ζ_d)^{1−ℓ̄_d}."""
    ring = ctx.ring
    lb = ctx.ell_bar_d(d)
    return ring(lb) / ctx.xi_hat(d) * (ring.qpow(-d) - ring.qpow(d)) ** (1 - lb)


def cocycle(u: int, v: int, d: int, ctx: RootOfUnityContext) -> int:
    lb = ctx.ell_bar_d(d)
    return (u + v) // lb - u // lb - v // lb


def qbinom_at_root(u: int, v: int, d: int, ctx: RootOfUnityContext) -> Scalar:
    """[u+v choose u]_d at ζ through the factorization into a small q-binomial and an ordinary one."""
    _check(u, v)
    ring = ctx.ring
    lb = ctx.ell_bar_d(d)
    a, r = divmod(u, lb)
    b, s = divmod(v, lb)
    sign = ctx.xi(d) ** (a * s + b * r) * ctx.xi_bar(d) ** (a * b)
    return ring(sign * comb(a + b, a)) * qbinom(r + s, r, d, ring)


def factorial_at_root(u: int, d: int, ctx: RootOfUnityContext) -> Scalar:
    """([u]!_d / [ℓ̄_d]_d^a) at ζ for u = aℓ̄_d + r."""
    ring = ctx.ring
    lb = ctx.ell_bar_d(d)
    a, r = divmod(u, lb)
    sign = ctx.xi(d) ** (a * r) * ctx.xi_bar(d) ** comb(a, 2)
    value = ring(sign * _factorial(a)) * qfact(r, d, ring)
    return value * last_factorial(ctx, d) ** a


def _factorial(a: int) -> int:
    value = 1
    for k in range(2, a + 1):
        value *= k
    return value


@dataclass(kw_only=True, slots=True)
class SpecialConstants:
    nabla: Scalar
    brace: Scalar
    brace_closed: Scalar
    bracket: Scalar
    bracket_closed: Scalar | None
    nabla_identity: bool


def special_constants(ctx: RootOfUnityContext) -> SpecialConstants:
    """∇_j, {ℓ̄_j:𝐞} and [ℓ̄_j:𝐞]_ii for the long index j, with their closed forms."""
    ring = ctx.ring
    e = ctx.cartan.e
    lb, lbj = ctx.ell_bar, ctx.ell_bar_d(e)
    zeta = ctx.zeta
    nabla = (ring.qpow(e) - ring.qpow(-e)) ** lbj
    brace = brace_ratio(lbj, e, ring)
    brace_closed = ring(e if ctx.frak_d == 1 else 0) * ring.qpow(-(e - 1) * comb(lb + 1, 2))
    bracket = bracket_ratio_ii(lbj, e, ring)
    bracket_closed = None
    if lb == e * lbj:
        bracket_closed = (
            ring(e)
            * ring.qpow(e * comb(lbj, 2) - comb(lb, 2))
            * (ring.qpow(-1) - zeta) ** (-(e - 1) * lbj)
        )
    nabla_simple = (zeta - ring.qpow(-1)) ** lb
    nabla_identity = ring.equal(nabla**ctx.frak_d, nabla_simple * qnum(e, 1, ring) ** lb)
    return SpecialConstants(
        nabla=nabla,
        brace=brace,
        brace_closed=brace_closed,
        bracket=bracket,
        bracket_closed=bracket_closed,
        nabla_identity=nabla_identity,
    )


# recursions of the B₂ coproduct computations


@cache
def c_kt(k: int, t: int, ring: ScalarRing | None = None) -> Scalar:
    """c_{k,0} = 1 and c_{k,t} = c_{k−1,t} + c_{k,t−1} q^{−(2t−2+k)} [2t+k−1]."""
    ring = ring or generic_ring()
    if k < 0 or t < 0:
        return ring.zero
    if t == 0:
        return ring.one
    return c_kt(k - 1, t, ring) + c_kt(k, t - 1, ring) * ring.qpow(-(2 * t - 2 + k)) * qnum(2 * t + k - 1, 1, ring)


def c_prime_kt(k: int, t: int, ring: ScalarRing | None = None) -> Scalar:
    """c_{k,t} with q replaced by q²."""
    ring = ring or generic_ring()
    return substitute_square(c_kt(k, t, generic_ring()), ring)


def substitute_square(x: Scalar, ring: ScalarRing | None = None) -> Scalar:
    ring = ring or generic_ring()
    numer = sum((ring(_fraction(c)) * ring.qpow(2 * e) for (e,), c in x.numer.terms()), ring.zero)
    denom = sum((ring(_fraction(c)) * ring.qpow(2 * e) for (e,), c in x.denom.terms()), ring.zero)
    return numer / denom


def _a_bounds_ok(n: int, s: int, t: int, k: int) -> bool:
    return not (s < 0 or t < 0 or k < 0 or s > n or t > min(s, n - s) or k > n - s - t)


@cache
def a_nstk(n: int, s: int, t: int, k: int) -> Scalar:
    """Closed form of the multinomial coefficients, zero outside the index bounds."""
    ring = generic_ring()
    if not _a_bounds_ok(n, s, t, k):
        return ring.zero
    u = s + t + k
    return ring.qpow(-u * (n - u) - (s - t) * (2 * t + k)) * qbinom(n, u) * qbinom(u, s - t) * c_kt(k, t)


@cache
def a_nstk_recursive(n: int, s: int, t: int, k: int) -> Scalar:
    """The same coefficients through the four-term recursion in n."""
    ring = generic_ring()
    if not _a_bounds_ok(n, s, t, k):
        return ring.zero
    if n == 0:
        return ring.one
    m = n - 1
    return (
        ring.qpow(-2 * (m + 1 - s + t)) * a_nstk_recursive(m, s - 1, t, k)
        + ring.qpow(-3 * (m + 1 - s - t - k)) * qnum(m + 2 - s - t - k) * a_nstk_recursive(m, s - 1, t - 1, k)
        + ring.qpow(-2 * (m + 1 - s - t - k)) * a_nstk_recursive(m, s, t, k - 1)
        + a_nstk_recursive(m, s, t, k)
    )


def c_prime_sum(n: int) -> tuple[Scalar, Scalar]:
    """Both sides of Σ_p (−(q−q⁻¹)/(q²[2]))^p c′_{n−2p,p} = q^{−binom(n,2)} [2]^{−n} {n:2}."""
    ring = generic_ring()
    phi = -(ring.q - ring.qpow(-1)) / (ring.qpow(2) * qnum(2))
    left = sum((phi**p * c_prime_kt(n - 2 * p, p) for p in range(n // 2 + 1)), ring.zero)
    right = ring.qpow(-comb(n, 2)) * qnum(2) ** (-n) * brace_ratio(n, 2)
    return left, right
