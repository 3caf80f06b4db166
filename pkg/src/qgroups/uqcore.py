"""The quantum group U_q(𝔤) as a symbolic algebra.

Elements are finite sums of triangular terms ``(e, ν, f)`` standing for
``E_{e₁}⋯E_{e_k} K^ν F_{f₁}⋯F_{f_m}``; every product is brought back into this
form with the commutation relations between E, K and F. Serre relations are
not applied here, see :mod:`qgroups.slices`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import TYPE_CHECKING, Annotated, Callable, Iterable, Iterator, Literal, Mapping

from typing_extensions import Doc, Self

from .config import RrefMethod, RunConfig, check_root_of_unity
from .coxeter import CartanData, PhiSymmetricMap, RootSystem, WeylElement, build_root_system
from .errors import InvalidRootOfUnity
from .qring import RootOfUnityContext, Scalar, ScalarRing, generic_ring, qfact, root_of_unity
from .types import Parity, Weight, Word

if TYPE_CHECKING:
    from .pbw import PBW
    from .slices import SliceOracle

logger = logging.getLogger(__name__)

Term = tuple[Word, Weight, Word]
"""``(e, ν, f)``: E-letters, Cartan multi-exponent, F-letters."""

Involution = Literal["omega", "u", "upsilon", "pi", "pi_bar", "eta"]

INVOLUTIONS: dict[str, Involution] = {
    "Ω": "omega",
    "𝔘": "u",
    "Υ": "upsilon",
    "Π": "pi",
    "Π̄": "pi_bar",
    "𝕀": "eta",
}


@dataclass(frozen=True)
class LatticeCharacter:
    """A homomorphism ℤ^Δ → {±q^k}, stored through its values on simple roots."""

    signs: tuple[int, ...]
    exponents: tuple[int, ...]

    @classmethod
    def trivial(cls, rank: int) -> LatticeCharacter:
        return cls((1,) * rank, (0,) * rank)

    @classmethod
    def iota(cls, rank: int) -> LatticeCharacter:
        """ι(β) = (−1)^{ht β}."""
        return cls((-1,) * rank, (0,) * rank)

    @classmethod
    def varpi(cls, system: RootSystem, h: PhiSymmetricMap) -> LatticeCharacter:
        """ϖ_h(β) = q^{2(ρ_h|β)}."""
        return cls(
            (1,) * system.rank,
            tuple(system.ipair(system.simple(i), h(system.simple(i))) for i in range(1, system.rank + 1)),
        )

    @classmethod
    def vartheta(cls, system: RootSystem, s: WeylElement, h: PhiSymmetricMap) -> LatticeCharacter:
        """ϑ_s^h(β) = q^{−(θ_h(s)|β)}."""
        theta = system.theta_h(s, h)
        return cls((1,) * system.rank, tuple(-_integral(system.pair(theta, system.simple(i))) for i in _range(system)))

    @classmethod
    def kappa(cls, system: RootSystem, s: WeylElement) -> LatticeCharacter:
        """κ_s(β) = (−1)^{(θ̌(s)|β)} q^{−(θ(s)|β)}."""
        theta, theta_check = system.theta_sums(s)
        return cls(
            tuple((-1) ** _integral(system.pair(theta_check, system.simple(i))) for i in _range(system)),
            tuple(-system.ipair(theta, system.simple(i)) for i in _range(system)),
        )

    def sign_exponent(self, beta: Weight) -> tuple[int, int]:
        sign = 1
        for s, b in zip(self.signs, beta):
            if s < 0 and b % 2:
                sign = -sign
        return sign, sum(e * b for e, b in zip(self.exponents, beta))

    def value(self, beta: Weight, ring: ScalarRing) -> Scalar:
        sign, exponent = self.sign_exponent(beta)
        return ring(sign) * ring.qpow(exponent)

    def __mul__(self, other: LatticeCharacter) -> LatticeCharacter:
        return LatticeCharacter(
            tuple(a * b for a, b in zip(self.signs, other.signs)),
            tuple(a + b for a, b in zip(self.exponents, other.exponents)),
        )

    def inverse(self) -> LatticeCharacter:
        return LatticeCharacter(self.signs, tuple(-e for e in self.exponents))

    def pushforward(self, system: RootSystem, s: WeylElement) -> LatticeCharacter:
        """(s_*u)(β) = u(s⁻¹β)."""
        s_inv = system.inverse(s)
        values = [self.sign_exponent(s_inv(system.simple(i))) for i in _range(system)]
        return LatticeCharacter(tuple(v[0] for v in values), tuple(v[1] for v in values))


def _range(system: RootSystem) -> range:
    return range(1, system.rank + 1)


def _integral(value: int | Fraction) -> int:
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise ValueError(f"{value} is not integral")
        return int(value)
    return value


class AlgebraElement:
    """A finite linear combination of triangular terms."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: QuantumAlgebra, terms: Mapping[Term, Scalar] | None = None) -> None:
        self.algebra = algebra
        self.terms: dict[Term, Scalar] = {k: v for k, v in (terms or {}).items() if v}

    def __add__(self, other: AlgebraElement | int | Scalar) -> AlgebraElement:
        other = self.algebra.coerce(other)
        terms = dict(self.terms)
        for key, value in other.terms.items():
            terms[key] = terms.get(key, self.algebra.ring.zero) + value
        return AlgebraElement(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: AlgebraElement | int | Scalar) -> AlgebraElement:
        return self + (-self.algebra.coerce(other))

    def __rsub__(self, other: AlgebraElement | int | Scalar) -> AlgebraElement:
        return self.algebra.coerce(other) - self

    def __mul__(self, other: AlgebraElement | int | Scalar) -> AlgebraElement:
        if not isinstance(other, AlgebraElement):
            c = self.algebra.ring(other)
            return AlgebraElement(self.algebra, {k: v * c for k, v in self.terms.items()})
        return self.algebra.multiply(self, other)

    def __rmul__(self, other: int | Scalar) -> AlgebraElement:
        c = self.algebra.ring(other)
        return AlgebraElement(self.algebra, {k: c * v for k, v in self.terms.items()})

    def __pow__(self, n: int) -> AlgebraElement:
        if n < 0:
            raise ValueError("negative powers are only defined for K^ν")
        result = self.algebra.one
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            if isinstance(other, int):
                other = self.algebra.coerce(other)
            else:
                return NotImplemented
        return not (self - other).terms

    def __hash__(self) -> int:  # pragma: no cover
        raise TypeError("AlgebraElement is not hashable")

    def is_zero(self) -> bool:
        return not self.terms

    def weight(self) -> Weight | None:
        """𝔴 when homogeneous, else None."""
        weights = {self.algebra.term_weight(t) for t in self.terms}
        if len(weights) == 1:
            return weights.pop()
        if not weights:
            return self.algebra.zero_weight
        return None

    def __repr__(self) -> str:
        return f"AlgebraElement({self.algebra.format(self)!r})"

    def __str__(self) -> str:
        return self.algebra.format(self)


class TensorElement:
    """A finite sum of simple tensors of triangular terms, with 2 or 3 legs."""

    __slots__ = ("algebra", "legs", "terms")

    def __init__(self, algebra: QuantumAlgebra, legs: int, terms: Mapping[tuple[Term, ...], Scalar] | None = None):
        self.algebra = algebra
        self.legs = legs
        self.terms: dict[tuple[Term, ...], Scalar] = {k: v for k, v in (terms or {}).items() if v}

    def _check(self, other: TensorElement) -> None:
        if other.legs != self.legs:
            raise ValueError(f"cannot combine {self.legs}- and {other.legs}-fold tensors")

    def __add__(self, other: TensorElement) -> TensorElement:
        self._check(other)
        terms = dict(self.terms)
        for key, value in other.terms.items():
            terms[key] = terms.get(key, self.algebra.ring.zero) + value
        return TensorElement(self.algebra, self.legs, terms)

    def __neg__(self) -> TensorElement:
        return TensorElement(self.algebra, self.legs, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + (-other)

    def __mul__(self, other: TensorElement | int | Scalar) -> TensorElement:
        if not isinstance(other, TensorElement):
            c = self.algebra.ring(other)
            return TensorElement(self.algebra, self.legs, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        ring = self.algebra.ring
        terms: dict[tuple[Term, ...], Scalar] = {}
        for left, a in self.terms.items():
            for right, b in other.terms.items():
                products = [self.algebra.term_product(x, y) for x, y in zip(left, right)]
                for combo in product(*(p.items() for p in products)):
                    key = tuple(t for t, _ in combo)
                    c = a * b
                    for _, v in combo:
                        c *= v
                    terms[key] = terms.get(key, ring.zero) + c
        return TensorElement(self.algebra, self.legs, terms)

    def __rmul__(self, other: int | Scalar) -> TensorElement:
        return self * other

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return not (self - other).terms

    def __hash__(self) -> int:  # pragma: no cover
        raise TypeError("TensorElement is not hashable")

    def is_zero(self) -> bool:
        return not self.terms

    def leg(self, key: tuple[Term, ...], index: int) -> AlgebraElement:
        return self.algebra.term(key[index])

    def __str__(self) -> str:
        return self.algebra.format_tensor(self)

    def __repr__(self) -> str:
        return f"TensorElement({self.algebra.format_tensor(self)!r})"


class QuantumAlgebra:
    """U_q(𝔤) for one Cartan type over ``QQ(q)`` or, at a root of unity, over ``QQ(ζ)``."""

    def __init__(
        self,
        cartan: Annotated[CartanData, Doc("Cartan data of the algebra")],
        ell: Annotated[int, Doc("order of ζ, 0 for generic q")] = 0,
        *,
        degree_bound: Annotated[int, Doc("largest 𝔴-height the slice oracle accepts")] = 8,
        rref_method: RrefMethod = "FF",
        cache_dir: Path | None = None,
        guarded: bool = True,
    ) -> None:
        self.cartan = cartan
        self.system = build_root_system(cartan)
        self.rank = cartan.rank
        self.ell = ell
        if guarded:
            check_root_of_unity(cartan, ell)
        self.root_of_unity: RootOfUnityContext | None = root_of_unity(cartan, ell, guarded=False) if ell else None
        self.ring: ScalarRing = self.root_of_unity.ring if self.root_of_unity else generic_ring()
        self.degree_bound = degree_bound
        self.rref_method = rref_method
        self.cache_dir = cache_dir
        self.zero_weight: Weight = (0,) * self.rank
        self._cross: dict[tuple[Word, Word], dict[Term, Scalar]] = {}
        self._products: dict[tuple[Term, Term], dict[Term, Scalar]] = {}
        self._gamma_images: dict[tuple[str, int, int, bool], AlgebraElement] = {}

    @classmethod
    def from_config(cls, config: RunConfig) -> Self:
        config.validate()
        return cls(
            config.cartan,
            config.ell,
            degree_bound=config.degree_bound,
            rref_method=config.rref_method,
            cache_dir=config.cache_dir,
        )

    def __repr__(self) -> str:
        return f"QuantumAlgebra({self.cartan.type_label}, ell={self.ell})"

    @cached_property
    def oracle(self) -> SliceOracle:
        from .slices import SliceOracle

        return SliceOracle(self)

    @cached_property
    def pbw(self) -> PBW:
        from .pbw import PBW

        return PBW(self)

    # constructors

    def coerce(self, value: AlgebraElement | int | Scalar) -> AlgebraElement:
        if isinstance(value, AlgebraElement):
            return value
        return AlgebraElement(self, {((), self.zero_weight, ()): self.ring(value)})

    @property
    def zero(self) -> AlgebraElement:
        return AlgebraElement(self)

    @property
    def one(self) -> AlgebraElement:
        return self.coerce(1)

    def term(self, key: Term, coefficient: Scalar | int = 1) -> AlgebraElement:
        return AlgebraElement(self, {key: self.ring(coefficient)})

    def E(self, i: int, power: int = 1) -> AlgebraElement:
        self._letter(i)
        return self.term(((i,) * power, self.zero_weight, ()))

    def F(self, i: int, power: int = 1) -> AlgebraElement:
        self._letter(i)
        return self.term(((), self.zero_weight, (i,) * power))

    def K(self, nu: Weight | int, power: int = 1) -> AlgebraElement:
        """K^ν for a weight ν, or K_i^power for an index i."""
        if isinstance(nu, int):
            self._letter(nu)
            nu = tuple(power * int(k == nu - 1) for k in range(self.rank))
        return self.term(((), tuple(nu), ()))

    def E_word(self, word: Word) -> AlgebraElement:
        return self.term((tuple(word), self.zero_weight, ()))

    def F_word(self, word: Word) -> AlgebraElement:
        return self.term(((), self.zero_weight, tuple(word)))

    def _letter(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise ValueError(f"generator index {i} out of range for {self.cartan.type_label}")

    # weights and gradings

    def letters_weight(self, word: Word) -> Weight:
        weight = [0] * self.rank
        for letter in word:
            weight[letter - 1] += 1
        return tuple(weight)

    def term_weight(self, t: Term) -> Weight:
        e, _, f = t
        return tuple(a - b for a, b in zip(self.letters_weight(e), self.letters_weight(f)))

    def grade(self, x: AlgebraElement) -> dict[Term, tuple[Weight, Parity, Parity]]:
        """(𝔴, 𝔬⁺, 𝔬⁻) of every term."""
        grades = {}
        for t in x.terms:
            e, nu, f = t
            we, wf = self.letters_weight(e), self.letters_weight(f)
            grades[t] = (
                tuple(a - b for a, b in zip(we, wf)),
                tuple((a + n) % 2 for a, n in zip(we, nu)),
                tuple((b + n) % 2 for b, n in zip(wf, nu)),
            )
        return grades

    def pair(self, x: Weight, y: Weight) -> int:
        return self.system.ipair(x, y)

    def q_i(self, i: int, power: int = 1) -> Scalar:
        return self.ring.qpow(self.cartan.d[i - 1] * power)

    # multiplication

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        ring = self.ring
        terms: dict[Term, Scalar] = {}
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                for t, c in self.term_product(a, b).items():
                    terms[t] = terms.get(t, ring.zero) + ca * cb * c
        return AlgebraElement(self, terms)

    def term_product(self, a: Term, b: Term) -> dict[Term, Scalar]:
        key = (a, b)
        if key not in self._products:
            self._products[key] = self._term_product(a, b)
        return self._products[key]

    def _term_product(self, a: Term, b: Term) -> dict[Term, Scalar]:
        e1, nu1, f1 = a
        e2, nu2, f2 = b
        ring = self.ring
        result: dict[Term, Scalar] = {}
        for (e, mu, f), c in self.cross(f1, e2).items():
            exponent = self.pair(nu1, self.letters_weight(e)) + self.pair(nu2, self.letters_weight(f))
            key = (e1 + e, tuple(x + y + z for x, y, z in zip(nu1, mu, nu2)), f + f2)
            result[key] = result.get(key, ring.zero) + c * ring.qpow(exponent)
        return {k: v for k, v in result.items() if v}

    def cross(self, f: Word, e: Word) -> dict[Term, Scalar]:
        """F_f · E_e rewritten in triangular form."""
        if not f or not e:
            return {(e, self.zero_weight, f): self.ring.one}
        key = (f, e)
        if key not in self._cross:
            self._cross[key] = self._cross_uncached(f, e)
        return self._cross[key]

    def _cross_uncached(self, f: Word, e: Word) -> dict[Term, Scalar]:
        ring = self.ring
        head, j = f[:-1], f[-1]
        i, tail = e[0], e[1:]
        result: dict[Term, Scalar] = {}

        def add(t: Term, c: Scalar) -> None:
            result[t] = result.get(t, ring.zero) + c

        # F_j E_i = E_i F_j − δ_ij (K_i − K_i⁻¹)/(q_i − q_i⁻¹)
        left = self.cross(head, (i,))
        right = self.cross((j,), tail)
        for a, ca in left.items():
            for b, cb in right.items():
                for t, c in self.term_product(a, b).items():
                    add(t, ca * cb * c)
        if i == j:
            factor = -ring.one / (self.q_i(i) - self.q_i(i, -1))
            alpha = self.system.simple(i)
            inner = self.cross(head, tail)
            for sign, nu in ((1, alpha), (-1, tuple(-c for c in alpha))):
                shift = self.pair(nu, self.letters_weight(head))
                for (ee, mu, ff), c in inner.items():
                    t = (ee, tuple(x + y for x, y in zip(nu, mu)), ff)
                    add(t, factor * ring(sign) * ring.qpow(shift + self.pair(nu, self.letters_weight(ee))) * c)
        return {k: v for k, v in result.items() if v}

    def normal_order(self, x: AlgebraElement) -> AlgebraElement:
        """Elements are kept in E·K·F order; this drops cancelled terms."""
        return AlgebraElement(self, x.terms)

    def word(self, symbols: Iterable[tuple[str, int, int]]) -> AlgebraElement:
        """Product of generator powers given as (symbol, index, exponent)."""
        result = self.one
        for symbol, index, exponent in symbols:
            match symbol:
                case "E":
                    if exponent < 0:
                        raise ValueError("E-exponents must be nonnegative")
                    factor = self.E(index, exponent)
                case "F":
                    if exponent < 0:
                        raise ValueError("F-exponents must be nonnegative")
                    factor = self.F(index, exponent)
                case "K":
                    factor = self.K(index, exponent)
                case _:
                    raise ValueError(f"unknown generator {symbol}")
            result = result * factor
        return result

    # maps defined on generators

    def apply_map(
        self,
        x: AlgebraElement,
        *,
        e_image: Callable[[int], AlgebraElement],
        f_image: Callable[[int], AlgebraElement],
        k_image: Callable[[Weight], AlgebraElement],
        anti: bool = False,
        conj: bool = False,
    ) -> AlgebraElement:
        ring = self.ring
        e_cache: dict[int, AlgebraElement] = {}
        f_cache: dict[int, AlgebraElement] = {}

        def e_of(i: int) -> AlgebraElement:
            if i not in e_cache:
                e_cache[i] = e_image(i)
            return e_cache[i]

        def f_of(i: int) -> AlgebraElement:
            if i not in f_cache:
                f_cache[i] = f_image(i)
            return f_cache[i]

        result = self.zero
        for (e, nu, f), c in x.terms.items():
            if anti:
                factors = [f_of(i) for i in reversed(f)] + [k_image(nu)] + [e_of(i) for i in reversed(e)]
            else:
                factors = [e_of(i) for i in e] + [k_image(nu)] + [f_of(i) for i in f]
            value = self.one
            for factor in factors:
                value = value * factor
            result = result + value * (ring.conj(c) if conj else c)
        return result

    def _neg(self, nu: Weight) -> Weight:
        return tuple(-c for c in nu)

    def involution(self, which: Involution | str, x: AlgebraElement) -> AlgebraElement:
        which = INVOLUTIONS.get(which, which)
        K = self.K
        match which:
            case "omega":
                return self.apply_map(
                    x, e_image=self.F, f_image=self.E, k_image=lambda nu: K(self._neg(nu)), anti=True, conj=True
                )
            case "u":
                return self.apply_map(x, e_image=self.E, f_image=self.F, k_image=lambda nu: K(self._neg(nu)), anti=True)
            case "upsilon":
                return self.apply_map(x, e_image=self.E, f_image=self.F, k_image=K, anti=True, conj=True)
            case "pi":
                return self.apply_map(x, e_image=self.F, f_image=self.E, k_image=lambda nu: K(self._neg(nu)))
            case "pi_bar":
                return self.apply_map(
                    x, e_image=self.E, f_image=self.F, k_image=lambda nu: K(self._neg(nu)), conj=True
                )
            case "eta":
                eta = self.system.eta
                return self.apply_map(
                    x,
                    e_image=lambda i: self.E(eta[i - 1]),
                    f_image=lambda i: self.F(eta[i - 1]),
                    k_image=lambda nu: K(tuple(nu[eta.index(k + 1)] for k in range(self.rank))),
                )
        raise ValueError(f"unknown involution {which!r}")

    def che(self, h: PhiSymmetricMap, u: LatticeCharacter, x: AlgebraElement) -> AlgebraElement:
        """Ψ_u^h."""
        if not self.system.is_phi_symmetric(h):
            raise ValueError("h is not Φ-symmetric")
        ring = self.ring

        def e_image(i: int) -> AlgebraElement:
            alpha = self.system.simple(i)
            return self.K(h(alpha)) * self.E(i) * u.value(alpha, ring)

        def f_image(i: int) -> AlgebraElement:
            alpha = self.system.simple(i)
            return self.F(i) * self.K(self._neg(h(alpha))) * (ring.one / u.value(alpha, ring))

        return self.apply_map(x, e_image=e_image, f_image=f_image, k_image=self.K)

    # Hopf structure

    def antipode(self, x: AlgebraElement) -> AlgebraElement:
        return self.apply_map(
            x,
            e_image=lambda i: -(self.E(i) * self.K(i, -1)),
            f_image=lambda i: -(self.K(i) * self.F(i)),
            k_image=lambda nu: self.K(self._neg(nu)),
            anti=True,
        )

    def counit(self, x: AlgebraElement) -> Scalar:
        total = self.ring.zero
        for (e, _, f), c in x.terms.items():
            if not e and not f:
                total += c
        return total

    def tensor(self, *factors: AlgebraElement) -> TensorElement:
        ring = self.ring
        terms: dict[tuple[Term, ...], Scalar] = {}
        for combo in product(*(f.terms.items() for f in factors)):
            key = tuple(t for t, _ in combo)
            c = ring.one
            for _, v in combo:
                c *= v
            terms[key] = terms.get(key, ring.zero) + c
        return TensorElement(self, len(factors), terms)

    def _tensor_map(
        self,
        x: AlgebraElement,
        *,
        e_image: Callable[[int], TensorElement],
        f_image: Callable[[int], TensorElement],
        k_image: Callable[[Weight], TensorElement],
    ) -> TensorElement:
        result: TensorElement | None = None
        unit = self.tensor(self.one, self.one)
        for (e, nu, f), c in x.terms.items():
            value = unit
            for factor in [e_image(i) for i in e] + [k_image(nu)] + [f_image(i) for i in f]:
                value = value * factor
            value = value * c
            result = value if result is None else result + value
        return result if result is not None else TensorElement(self, 2)

    def coproduct(self, x: AlgebraElement) -> TensorElement:
        """Δ(E_i) = E_i⊗K_i + 1⊗E_i, Δ(F_i) = F_i⊗1 + K_i⁻¹⊗F_i, Δ(K^ν) = K^ν⊗K^ν."""
        t = self.tensor
        return self._tensor_map(
            x,
            e_image=lambda i: t(self.E(i), self.K(i)) + t(self.one, self.E(i)),
            f_image=lambda i: t(self.F(i), self.one) + t(self.K(i, -1), self.F(i)),
            k_image=lambda nu: t(self.K(nu), self.K(nu)),
        )

    def delta_bar(self, x: AlgebraElement) -> TensorElement:
        """Twisted coproduct Δ̄(E_i) = E_i⊗K_i⁻¹ + 1⊗E_i, Δ̄(F_i) = F_i⊗1 + K_i⊗F_i."""
        t = self.tensor
        return self._tensor_map(
            x,
            e_image=lambda i: t(self.E(i), self.K(i, -1)) + t(self.one, self.E(i)),
            f_image=lambda i: t(self.F(i), self.one) + t(self.K(i), self.F(i)),
            k_image=lambda nu: t(self.K(nu), self.K(nu)),
        )

    def map_leg(self, t: TensorElement, leg: int, fn: Callable[[AlgebraElement], AlgebraElement]) -> TensorElement:
        ring = self.ring
        terms: dict[tuple[Term, ...], Scalar] = {}
        for key, c in t.terms.items():
            for image, v in fn(self.term(key[leg])).terms.items():
                new = key[:leg] + (image,) + key[leg + 1 :]
                terms[new] = terms.get(new, ring.zero) + c * v
        return TensorElement(self, t.legs, terms)

    def coproduct_leg(self, t: TensorElement, leg: int) -> TensorElement:
        """(Δ⊗id) for leg 0, (id⊗Δ) for leg 1 of a 2-fold tensor."""
        ring = self.ring
        terms: dict[tuple[Term, ...], Scalar] = {}
        for key, c in t.terms.items():
            for image, v in self.coproduct(self.term(key[leg])).terms.items():
                new = key[:leg] + image + key[leg + 1 :]
                terms[new] = terms.get(new, ring.zero) + c * v
        return TensorElement(self, t.legs + 1, terms)

    def leg_embed(self, t: TensorElement, legs: tuple[int, ...], total: int = 3) -> TensorElement:
        """Place the legs of t at the given positions of a ``total``-fold tensor, 1 elsewhere."""
        unit: Term = ((), self.zero_weight, ())
        terms = {}
        for key, c in t.terms.items():
            new = [unit] * total
            for position, part in zip(legs, key):
                new[position] = part
            terms[tuple(new)] = c
        return TensorElement(self, total, terms)

    def flip(self, t: TensorElement) -> TensorElement:
        return TensorElement(self, t.legs, {tuple(reversed(k)): c for k, c in t.terms.items()})

    def omega_sharp(self, t: TensorElement) -> TensorElement:
        """Ω#(x⊗y) = Ω(y)⊗Ω(x)."""
        result = TensorElement(self, 2)
        for (a, b), c in t.terms.items():
            left = self.involution("omega", self.term(b))
            right = self.involution("omega", self.term(a))
            result = result + self.tensor(left, right) * self.ring.conj(c)
        return result

    def tanisaki(self, t: TensorElement) -> TensorElement:
        """𝕁(x⊗y) = q^{−(μ|ν)} xK^{−ν} ⊗ yK^{−μ} on homogeneous legs."""
        result = TensorElement(self, 2)
        for (a, b), c in t.terms.items():
            mu, nu = self.term_weight(a), self.term_weight(b)
            left = self.term(a) * self.K(self._neg(nu))
            right = self.term(b) * self.K(self._neg(mu))
            result = result + self.tensor(left, right) * (c * self.ring.qpow(-self.pair(mu, nu)))
        return result

    # braid automorphisms

    def _guard_braid(self) -> None:
        if self.root_of_unity and self.cartan.e == 3 and self.root_of_unity.ell_bar == 4:
            raise InvalidRootOfUnity("braid automorphisms of G₂ are undefined for ℓ̄ = 4")

    def _gamma_generator(self, symbol: str, i: int, j: int, inverse: bool) -> AlgebraElement:
        key = (symbol, i, j, inverse)
        if key in self._gamma_images:
            return self._gamma_images[key]
        ring = self.ring
        if i == j:
            match symbol, inverse:
                case "E", False:
                    value = -(self.K(i, -1) * self.F(i))
                case "F", False:
                    value = -(self.E(i) * self.K(i))
                case "E", True:
                    value = -(self.F(i) * self.K(i))
                case _:
                    value = -(self.K(i, -1) * self.E(i))
        else:
            a = -self.cartan.A[i - 1][j - 1]
            d = self.cartan.d[i - 1]
            value = self.zero
            for r in range(a + 1):
                s = a - r
                c = ring((-1) ** r) / (qfact(r, d, ring) * qfact(s, d, ring))
                if symbol == "E":
                    c = c * self.q_i(i, -s)
                    if inverse:
                        value = value + self.E(i, r) * self.E(j) * self.E(i, s) * c
                    else:
                        value = value + self.E(i, s) * self.E(j) * self.E(i, r) * c
                else:
                    c = c * self.q_i(i, s)
                    if inverse:
                        value = value + self.F(i, s) * self.F(j) * self.F(i, r) * c
                    else:
                        value = value + self.F(i, r) * self.F(j) * self.F(i, s) * c
        self._gamma_images[key] = value
        return value

    def gamma(self, i: int, x: AlgebraElement, inverse: bool = False) -> AlgebraElement:
        """Γ_i or Γ_i⁻¹."""
        self._letter(i)
        self._guard_braid()
        reflection = self.system.reflection(i)
        return self.apply_map(
            x,
            e_image=lambda j: self._gamma_generator("E", i, j, inverse),
            f_image=lambda j: self._gamma_generator("F", i, j, inverse),
            k_image=lambda nu: self.K(reflection(nu)),
        )

    def gamma_word(self, w: Word, x: AlgebraElement, inverse: bool = False) -> AlgebraElement:
        """Γ_w = Γ_{w₁}∘⋯∘Γ_{w_k}, or its inverse Γ_{w_k}⁻¹∘⋯∘Γ_{w₁}⁻¹."""
        letters = w if inverse else tuple(reversed(w))
        for letter in letters:
            x = self.gamma(letter, x, inverse)
        return x

    def t_action(self, i: int, x: AlgebraElement, inverse: bool = False) -> AlgebraElement:
        """T_i = 𝔘∘Γ_i∘𝔘."""
        return self.involution("u", self.gamma(i, self.involution("u", x), inverse))

    def garside(self, x: AlgebraElement) -> AlgebraElement:
        """Γ_∂ = 𝕀∘Π∘Ψ_ι^{id}."""
        identity = PhiSymmetricMap.identity(self.rank)
        return self.involution("eta", self.involution("pi", self.che(identity, LatticeCharacter.iota(self.rank), x)))

    # generator images used by relation checks

    def generators(self) -> Iterator[tuple[str, AlgebraElement]]:
        for i in range(1, self.rank + 1):
            yield f"E{i}", self.E(i)
            yield f"F{i}", self.F(i)
            yield f"K{i}", self.K(i)

    # equality

    def equal(self, x: AlgebraElement, y: AlgebraElement) -> bool:
        return self.oracle.equal(x, y)

    def tensor_equal(self, x: TensorElement, y: TensorElement) -> bool:
        return self.oracle.tensor_equal(x, y)

    # printing

    def format_term(self, t: Term) -> str:
        e, nu, f = t
        parts: list[str] = []

        def run(symbol: str, word: Word) -> None:
            k = 0
            while k < len(word):
                n = 1
                while k + n < len(word) and word[k + n] == word[k]:
                    n += 1
                parts.append(f"{symbol}{word[k]}" + (f"^{n}" if n > 1 else ""))
                k += n

        run("E", e)
        for index, power in enumerate(nu, start=1):
            if power:
                parts.append(f"K{index}" + (f"^{power}" if power != 1 else ""))
        run("F", f)
        return " ".join(parts)

    def _format_coefficient(self, c: Scalar, body: str) -> tuple[str, str]:
        text = self.ring.to_text(c)
        if text == "1":
            return "+", body or "1"
        if text == "-1":
            return "-", body or "1"
        if text.startswith("-") and all(ch not in text[1:] for ch in "+-"):
            text, sign = text[1:], "-"
        else:
            sign = "+"
        if any(ch in text for ch in "+- /"):
            text = f"({text})"
        return sign, f"{text} * {body}" if body else text

    def format(self, x: AlgebraElement, limit: int | None = None) -> str:
        items = sorted(x.terms.items(), key=lambda kv: (len(kv[0][0]) + len(kv[0][2]), kv[0]))
        if limit is not None:
            items = items[:limit]
        chunks: list[str] = []
        for t, c in items:
            sign, body = self._format_coefficient(c, self.format_term(t))
            if chunks:
                chunks.append(f" {sign} {body}")
            else:
                chunks.append(body if sign == "+" else f"-{body}")
        return "".join(chunks) or "0"

    def format_tensor(self, t: TensorElement, limit: int | None = None) -> str:
        items = sorted(t.terms.items(), key=lambda kv: kv[0])
        if limit is not None:
            items = items[:limit]
        chunks: list[str] = []
        for key, c in items:
            body = " (x) ".join(self.format_term(part) or "1" for part in key)
            sign, body = self._format_coefficient(c, body)
            if chunks:
                chunks.append(f" {sign} {body}")
            else:
                chunks.append(body if sign == "+" else f"-{body}")
        return "".join(chunks) or "0"
