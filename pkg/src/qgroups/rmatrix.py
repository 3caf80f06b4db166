"""Truncated quasi-R-matrices at roots of unity.

The simple factor ``𝒫•_i = Σ_{s<ℓ̄_i} a_s E_i^s⊗F_i^s`` is transported along a
reduced word by Γ^{⊗2} and multiplied out into the partial matrices
``𝒫•_{◂w} = 𝒫•_{w^L}⋯𝒫•_{w^1}``. Everything here holds only modulo the tensor
ideals 𝒩(w), which are decided leg by leg through
:meth:`SkewCenter.ideal_member`.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from itertools import product
from math import comb
from typing import TYPE_CHECKING, Annotated, Iterator, Sequence

from typing_extensions import Doc

from .errors import InvalidRootOfUnity, NotReduced
from .pbw import Direction, ExponentFunction, PBWMonomial, exponent_vectors
from .qring import Scalar, qfact, qnum
from .random import random, random_prefix, random_word
from .skewcenter import IdealKind, IdealSpec, SkewCenter
from .types import Exponents, Weight, Word

if TYPE_CHECKING:
    from .uqcore import AlgebraElement, QuantumAlgebra, TensorElement

logger = logging.getLogger(__name__)


class Flavor(enum.Enum):
    SIMPLE = "simple"
    ELEMENTARY = "elementary"
    PARTIAL = "partial ◂"
    BAR = "bar ▸"


CASES = {2: "diagonal", 0: "orthogonal", -1: "single", -2: "double", -3: "triple"}
"""Names of the intertwining cases, keyed by the Cartan entry A_ij."""


@dataclass(frozen=True, slots=True)
class TruncatedP:
    anchor: Word
    flavor: Flavor
    expansion: TensorElement
    coefficients: Annotated[
        tuple[tuple[ExponentFunction, Scalar], ...],
        Doc("closed-sum coefficients c_ψ(ζ)⁻¹ of E^ψ_{◂w}⊗F^ψ_{◂w}"),
    ] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.expansion.terms)


@dataclass(frozen=True, slots=True)
class StructureConstants:
    """E^ψE^φ = Σ m[ψ, φ, χ] E^χ and Δ(F^χ) = Σ d[χ, φ, ψ] K^{−ψ⃗}F^φ ⊗ F^ψ in the 𝔅_{◂z} bases."""

    word: Word
    m: dict[tuple[Exponents, Exponents, Exponents], Scalar]
    d: dict[tuple[Exponents, Exponents, Exponents], Scalar]


def _add(target: dict, key: object, value: Scalar) -> None:
    total = target.get(key)
    total = value if total is None else total + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


def _height(weight: Weight) -> int:
    return sum(weight)


def exponents_up_to(roots: Sequence[Weight], bound: int) -> Iterator[Exponents]:
    """All ψ along ``roots`` with Σ ψ(β)·ht(β) ≤ bound."""

    def walk(k: int, budget: int) -> Iterator[Exponents]:
        if k == len(roots):
            yield ()
            return
        h = _height(roots[k])
        for n in range(budget // h + 1):
            for rest in walk(k + 1, budget - n * h):
                yield (n, *rest)

    return walk(0, bound)


class QuasiRMatrices:
    """Truncated quasi-R-matrices and the Tanisaki–Lusztig pairing for one algebra."""

    def __init__(self, algebra: QuantumAlgebra) -> None:
        self.algebra = algebra
        self.ring = algebra.ring
        self.system = algebra.system
        self.pbw = algebra.pbw
        self._center: SkewCenter | None = None
        self._built: dict[tuple[Flavor, Word], TruncatedP] = {}
        self._bar_products: dict[Word, TensorElement] = {}
        self._f_coordinates: dict[tuple[Word, Word], dict[Exponents, Scalar]] = {}

    def __repr__(self) -> str:
        return f"QuasiRMatrices({self.algebra.cartan.type_label}, ell={self.algebra.ell})"

    @property
    def center(self) -> SkewCenter:
        if self._center is None:
            self._center = SkewCenter(self.algebra)
        return self._center

    def _require_root_of_unity(self) -> None:
        if self.algebra.root_of_unity is None:
            raise InvalidRootOfUnity("truncated quasi-R-matrices need ℓ > 0")

    def ell_bar(self, root: Weight) -> int:
        self._require_root_of_unity()
        return self.algebra.root_of_unity.ell_bar_d(self.system.d_of(root))

    # pairing

    def sigma(self, psi: ExponentFunction) -> Scalar:
        """σ_ψ = Π q_α^{ψ(α)(ψ(α)−1)/2}(q_α − q_α⁻¹)^{ψ(α)}."""
        ring = self.ring
        value = ring.one
        for root, k in psi.values:
            d = self.system.d_of(root)
            value *= ring.qpow(d * comb(k, 2)) * (ring.qpow(d) - ring.qpow(-d)) ** k
        return value

    def pairing_coefficient(self, psi: ExponentFunction) -> Scalar:
        """c_ψ = [ψ]!/σ_ψ."""
        return self.pbw.psi_factorial(psi) / self.sigma(psi)

    def pairing(self, f: PBWMonomial, e: PBWMonomial) -> Scalar:
        """⟨F^ψ, E^φ⟩ = δ_{ψ,φ} c_ψ, scaled by the normalizations of both monomials."""
        if f.kind != "F" or e.kind != "E":
            raise ValueError("the pairing takes an F-monomial and an E-monomial")
        if f.word != e.word or f.direction is not e.direction:
            raise ValueError("both monomials must come from the same PBW basis")
        if f.psi != e.psi:
            return self.ring.zero
        scale = self.pbw.normalization_factor(f.psi, f.normalization)
        scale *= self.pbw.normalization_factor(e.psi, e.normalization)
        return self.pairing_coefficient(f.psi) * scale

    def pairing_vanishes(self, psi: ExponentFunction) -> bool:
        """Whether c_ψ(ζ) = 0; this happens exactly when some ψ(α) ≥ ℓ̄_α."""
        return not self.pbw.psi_factorial(psi)

    # construction

    def simple_coefficients(self, d: int, count: int) -> list[Scalar]:
        """a_0 = 1, a_{s+1} = q_i^s (q_i − q_i⁻¹)/[s+1]_i · a_s."""
        ring = self.ring
        step = ring.qpow(d) - ring.qpow(-d)
        values = [ring.one]
        for s in range(count - 1):
            values.append(values[-1] * ring.qpow(d * s) * step / qnum(s + 1, d, ring))
        return values

    def truncation(self, word: Word) -> list[range]:
        """[0, 𝔩) along the inversion sequence of ``word``."""
        return [range(self.ell_bar(root)) for root in self.system.inversion_sequence(word)]

    def gamma2(self, w: Word, t: TensorElement) -> TensorElement:
        """Γ_w^{⊗2}."""
        if not w:
            return t
        algebra = self.algebra
        for leg in range(t.legs):
            t = algebra.map_leg(t, leg, lambda x: algebra.gamma_word(w, x))
        return t

    def build_p(self, flavor: Flavor, anchor: Word) -> TruncatedP:
        self._require_root_of_unity()
        anchor = tuple(anchor)
        if anchor and not self.system.is_reduced(anchor):
            raise NotReduced(f"{anchor} is not reduced")
        key = (flavor, anchor)
        if key in self._built:
            return self._built[key]
        algebra = self.algebra
        match flavor:
            case Flavor.SIMPLE:
                if len(anchor) != 1:
                    raise ValueError("the simple flavor is anchored at a single letter")
                (i,) = anchor
                d = algebra.cartan.d[i - 1]
                values = self.simple_coefficients(d, self.ell_bar(self.system.simple(i)))
                expansion = _zero_tensor(algebra, 2)
                for s, a in enumerate(values):
                    expansion = expansion + algebra.tensor(algebra.E(i, s), algebra.F(i, s)) * a
                roots = [self.system.simple(i)]
                coefficients = tuple((ExponentFunction.along(roots, [s]), a) for s, a in enumerate(values))
            case Flavor.ELEMENTARY:
                if not anchor:
                    raise ValueError("elementary matrices need a non-empty word")
                simple = self.build_p(Flavor.SIMPLE, anchor[-1:])
                expansion = self.gamma2(anchor[:-1], simple.expansion)
                roots = [self.system.gamma(anchor)]
                coefficients = tuple((ExponentFunction.along(roots, [psi.n]), a) for psi, a in simple.coefficients)
            case Flavor.PARTIAL:
                # 𝒫◂w = 𝒫_w · 𝒫◂w′ for w = w′·letter
                expansion = algebra.tensor(algebra.one, algebra.one)
                if anchor:
                    previous = self.build_p(Flavor.PARTIAL, anchor[:-1]).expansion
                    expansion = self.build_p(Flavor.ELEMENTARY, anchor).expansion * previous
                coefficients = tuple(self._closed_coefficients(anchor))
            case Flavor.BAR:
                partial = self.build_p(Flavor.PARTIAL, anchor)
                expansion = algebra.omega_sharp(partial.expansion)
                coefficients = tuple((psi, self.ring.conj(c)) for psi, c in partial.coefficients)
            case _:
                raise ValueError(f"unknown flavor {flavor!r}")
        value = TruncatedP(anchor, flavor, expansion, coefficients)
        logger.debug("built %s 𝒫 at %s: %d terms", flavor.value, anchor, len(value))
        self._built[key] = value
        return value

    def simple(self, i: int) -> TruncatedP:
        return self.build_p(Flavor.SIMPLE, (i,))

    def elementary(self, w: Word) -> TruncatedP:
        return self.build_p(Flavor.ELEMENTARY, w)

    def partial(self, w: Word) -> TruncatedP:
        return self.build_p(Flavor.PARTIAL, w)

    def partial_bar(self, w: Word) -> TruncatedP:
        return self.build_p(Flavor.BAR, w)

    def _closed_coefficients(self, w: Word) -> Iterator[tuple[ExponentFunction, Scalar]]:
        roots = self.system.inversion_sequence(w)
        for ks in product(*self.truncation(w)):
            psi = ExponentFunction.along(roots, ks) if roots else ExponentFunction(self.algebra.rank)
            yield psi, self.ring.one / self.pairing_coefficient(psi)

    def closed_sum(self, w: Word, coefficients: Sequence[tuple[ExponentFunction, Scalar]]) -> TensorElement:
        """Σ c E^ψ_{◂w} ⊗ F^ψ_{◂w}."""
        algebra = self.algebra
        total = _zero_tensor(algebra, 2)
        for psi, c in coefficients:
            if not psi.values:
                total = total + algebra.tensor(algebra.one, algebra.one) * c
                continue
            e = self.pbw.expand(PBWMonomial(tuple(w), psi, Direction.LEFT, "E"))
            f = self.pbw.expand(PBWMonomial(tuple(w), psi, Direction.LEFT, "F"))
            total = total + algebra.tensor(e, f) * c
        return total

    def bar_product(self, w: Word) -> TensorElement:
        """Ω#(𝒫_{w₁}) ⋯ Ω#(𝒫_{w₁⋯w_k}), built on the cached product of the shorter prefix."""
        w = tuple(w)
        if w not in self._bar_products:
            algebra = self.algebra
            if not w:
                value = algebra.tensor(algebra.one, algebra.one)
            else:
                value = self.bar_product(w[:-1]) * algebra.omega_sharp(self.elementary(w).expansion)
            self._bar_products[w] = value
        return self._bar_products[w]

    def verify_build(self, w: Word) -> dict[str, bool]:
        """Product form against the closed ψ-sum, the bar matrix against Ω#, and the recursion in w.

        Shorter prefixes are covered by calling this on each of them; only the full word and
        the split after its first letter are checked here.
        """
        algebra = self.algebra
        w = tuple(w)
        partial = self.partial(w)
        report = {
            "product = ψ-sum": algebra.tensor_equal(partial.expansion, self.closed_sum(w, partial.coefficients)),
            "Ω#(𝒫◂) = 𝒫̄▸": algebra.tensor_equal(self.bar_product(w), self.partial_bar(w).expansion),
        }
        if len(w) > 1:
            a, b = w[:1], w[1:]
            recursive = self.gamma2(a, self.partial(b).expansion) * self.partial(a).expansion
            report[f"𝒫◂{w} = Γ{a}(𝒫◂{b})·𝒫◂{a}"] = algebra.tensor_equal(recursive, partial.expansion)
        if w:
            elementary = self.elementary(w)
            e = self.pbw.root_vector(w, "E")
            f = self.pbw.root_vector(w, "F")
            closed = _zero_tensor(algebra, 2)
            for psi, c in elementary.coefficients:
                closed = closed + algebra.tensor(e**psi.n, f**psi.n) * c
            report[f"𝒫{w} = Γ^⊗2 image"] = algebra.tensor_equal(elementary.expansion, closed)
        return report

    def verify_duality(self, w: Word) -> dict[str, bool]:
        """(⟨F^ψ, ·⟩⊗id)(𝒫•_{◂w}) = F^ψ for every ψ in the truncation."""
        algebra = self.algebra
        partial = self.partial(w)
        report = {}
        for psi, _ in partial.coefficients:
            if not psi.values:
                continue
            f = PBWMonomial(tuple(w), psi, Direction.LEFT, "F")
            total = algebra.zero
            for phi, c in partial.coefficients:
                e = PBWMonomial(tuple(w), phi, Direction.LEFT, "E")
                pairing = self.pairing(f, e)
                if pairing:
                    total = total + self.pbw.expand(PBWMonomial(tuple(w), phi, Direction.LEFT, "F")) * (pairing * c)
            report[f"duality at {psi}"] = algebra.equal(total, self.pbw.expand(f))
        return report

    # inverses

    def rho(self, k: int, d: int) -> Scalar:
        """ρ_k = Σ_r (−1)^r q_i^{r(k−1)} / ([r]_i! [k−r]_i!), r and k−r below ℓ̄_i."""
        self._require_root_of_unity()
        ring = self.ring
        top = self.algebra.root_of_unity.ell_bar_d(d)
        total = ring.zero
        for r in range(max(0, k - top + 1), min(k, top - 1) + 1):
            total += ring((-1) ** r) * ring.qpow(d * r * (k - 1)) / (qfact(r, d, ring) * qfact(k - r, d, ring))
        return total

    def inverse_remainder(self, w: Word) -> TensorElement:
        """𝒫̄•_w·𝒫•_w − 1⊗1 in closed form, supported on E_w^k⊗F_w^k with ℓ̄ ≤ k ≤ 2ℓ̄−2."""
        algebra = self.algebra
        ring = self.ring
        w = tuple(w)
        root = self.system.gamma(w)
        d = self.system.d_of(root)
        top = self.ell_bar(root)
        e = self.pbw.root_vector(w, "E")
        f = self.pbw.root_vector(w, "F")
        step = ring.qpow(d) - ring.qpow(-d)
        total = _zero_tensor(algebra, 2)
        for k in range(top, 2 * top - 1):
            c = self.rho(k, d) * ring.qpow(-d * comb(k, 2)) * ring((-1) ** k) * step**k
            total = total + algebra.tensor(e**k, f**k) * c
        return total

    def verify_inverse(self, w: Word) -> dict[str, bool]:
        algebra = self.algebra
        center = self.center
        w = tuple(w)
        unit = algebra.tensor(algebra.one, algebra.one)
        d = self.system.d_of(self.system.gamma(w))
        top = self.ell_bar(self.system.gamma(w))
        report = {
            "ρ_0 = 1": self.rho(0, d) == self.ring.one,
            "ρ_k = 0 below ℓ̄": all(not self.rho(k, d) for k in range(1, top)),
        }
        elementary = self.elementary(w)
        remainder = algebra.omega_sharp(elementary.expansion) * elementary.expansion - unit
        report["𝒫̄𝒫 − 1 = closed remainder"] = algebra.tensor_equal(remainder, self.inverse_remainder(w))
        report["remainder ∈ 𝒩∘"] = center.ideal_member(remainder, IdealSpec(IdealKind.N_CIRC, w))
        if len(w) > 1:
            partial = self.partial_bar(w).expansion * self.partial(w).expansion - unit
            report["𝒫̄▸𝒫◂ − 1 ∈ 𝒩∘"] = center.ideal_member(partial, IdealSpec(IdealKind.N_CIRC, w))
        logger.info("inverse of 𝒫 at %s: %d/%d checks pass", w, sum(report.values()), len(report))
        return report

    # intertwining

    def intertwine_difference(self, w: Word, x: AlgebraElement) -> TensorElement:
        """Δ∘Γ_w(x) − 𝒫̄•_{w▸}·Γ_w^{⊗2}Δ(x)·𝒫•_{◂w}."""
        algebra = self.algebra
        w = tuple(w)
        left = algebra.coproduct(algebra.gamma_word(w, x))
        right = self.partial_bar(w).expansion * self.gamma2(w, algebra.coproduct(x)) * self.partial(w).expansion
        return left - right

    def verify_intertwine(self, w: Word, x: AlgebraElement) -> bool:
        difference = self.intertwine_difference(w, x)
        return self.center.ideal_member(difference, IdealSpec(IdealKind.N, tuple(w)))

    def verify_twisted(self, z: Word, x: AlgebraElement) -> bool:
        """Δ̄(x)·𝒫•_{◂z} ≡ 𝒫•_{◂z}·Δ(x) mod 𝒩(z)."""
        algebra = self.algebra
        p = self.partial(z).expansion
        difference = algebra.delta_bar(x) * p - p * algebra.coproduct(x)
        return self.center.ideal_member(difference, IdealSpec(IdealKind.N, tuple(z)))

    def case(self, i: int, j: int) -> str:
        return CASES[self.algebra.cartan.A[i - 1][j - 1]]

    def appendix_identities(self, i: int, j: int) -> dict[str, bool]:
        """The per-case identities behind the intertwining of Γ_i with Δ on E_j, F_j and K_j."""
        algebra = self.algebra
        ring = self.ring
        a = algebra.cartan.A[i - 1][j - 1]
        gamma_e = algebra.gamma(i, algebra.E(j))
        report: dict[str, bool] = {}
        match a:
            case 2:
                report["Γ_i(E_i) = −K_i⁻¹F_i"] = algebra.equal(gamma_e, -(algebra.K(i, -1) * algebra.F(i)))
            case 0:
                report["Γ_i(E_j) = E_j"] = algebra.equal(gamma_e, algebra.E(j))
                report["Γ_i^⊗2Δ(E_j) = Δ(E_j)"] = algebra.tensor_equal(
                    self.gamma2((i,), algebra.coproduct(algebra.E(j))), algebra.coproduct(algebra.E(j))
                )
            case -1:
                report["Δ(E_(ij)) closed form"] = algebra.tensor_equal(
                    algebra.coproduct(gamma_e), self.single_coproduct(i, j)
                )
                for s in range(1, self._commutator_range(i) + 1):
                    report[f"[E_(ij), F_i^{s}]"] = algebra.equal(
                        gamma_e * algebra.F(i, s) - algebra.F(i, s) * gamma_e, self.single_commutator(i, j, s)
                    )
            case _:
                report["cross terms are E_i^k ⊗ K_i^k U⁺"] = self._cross_terms_shape(i, j, gamma_e)
        if algebra.root_of_unity is not None:
            for name, x in (("E", algebra.E(j)), ("F", algebra.F(j)), ("K", algebra.K(j))):
                report[f"Δ∘Γ_{i}({name}_{j}) ≡ 𝒫̄Γ^⊗2Δ𝒫 mod 𝒩"] = self.verify_intertwine((i,), x)
        return report

    def _commutator_range(self, i: int) -> int:
        if self.algebra.root_of_unity is None:
            return 3
        return self.ell_bar(self.system.simple(i))

    def single_coproduct(self, i: int, j: int) -> TensorElement:
        """E_(ij)⊗K_iK_j + 1⊗E_(ij) − (q_i − q_i⁻¹) E_i⊗K_iE_j, for A_ij = −1."""
        algebra = self.algebra
        e_ij = algebra.gamma(i, algebra.E(j))
        d = algebra.cartan.d[i - 1]
        step = self.ring.qpow(d) - self.ring.qpow(-d)
        k_ij = algebra.K(i) * algebra.K(j)
        return (
            algebra.tensor(e_ij, k_ij)
            + algebra.tensor(algebra.one, e_ij)
            - algebra.tensor(algebra.E(i), algebra.K(i) * algebra.E(j)) * step
        )

    def single_commutator(self, i: int, j: int, s: int) -> AlgebraElement:
        """[E_(ij), F_i^s] = −q_i^{1−s}[s]_i F_i^{s−1}K_iE_j, for A_ij = −1."""
        algebra = self.algebra
        d = algebra.cartan.d[i - 1]
        c = -(self.ring.qpow(d * (1 - s)) * qnum(s, d, self.ring))
        return algebra.F(i, s - 1) * algebra.K(i) * algebra.E(j) * c

    def _cross_terms_shape(self, i: int, j: int, gamma_e: AlgebraElement) -> bool:
        algebra = self.algebra
        k_image = algebra.K(self.system.reflection(i)(self.system.simple(j)))
        rest = algebra.coproduct(gamma_e) - algebra.tensor(gamma_e, k_image) - algebra.tensor(algebra.one, gamma_e)
        for (left, right), _ in algebra.oracle.canonical_tensor(rest).items():
            e, nu, f = left
            if not e or set(e) != {i} or any(nu) or f:
                return False
            if right[2] or right[1] != tuple(len(e) * c for c in self.system.simple(i)):
                return False
        return True

    # pairing relations

    def _f_coordinates_of(self, letters: Word, z: Word) -> dict[Exponents, Scalar]:
        key = (letters, z)
        if key not in self._f_coordinates:
            roots = self.system.inversion_sequence(z)
            if not letters:
                value = {(0,) * len(roots): self.ring.one}
            else:
                coordinates = self.pbw.coordinates(self.algebra.F_word(letters), z, Direction.LEFT, "F")
                value = {m.psi.exponents(roots): c for m, c in coordinates.items()}
            self._f_coordinates[key] = value
        return self._f_coordinates[key]

    def structure_constants(self, z: Word | None = None, bound: int = 2) -> StructureConstants:
        algebra = self.algebra
        z = self.pbw.canonical_word() if z is None else tuple(z)
        roots = self.system.inversion_sequence(z)
        monomials = list(exponents_up_to(roots, bound))

        def e(ks: Exponents) -> AlgebraElement:
            return self.pbw.expand(self.pbw.monomial(z, ks, Direction.LEFT, "E"))

        m: dict[tuple[Exponents, Exponents, Exponents], Scalar] = {}
        for psi in monomials:
            for phi in monomials:
                if self._exponent_height(roots, psi) + self._exponent_height(roots, phi) > bound:
                    continue
                x = e(psi) * e(phi)
                if not any(psi) or not any(phi):
                    m[(psi, phi, tuple(a + b for a, b in zip(psi, phi)))] = self.ring.one
                    continue
                for mono, c in self.pbw.coordinates(x, z, Direction.LEFT, "E").items():
                    m[(psi, phi, mono.psi.exponents(roots))] = c
        d: dict[tuple[Exponents, Exponents, Exponents], Scalar] = {}
        for chi in monomials:
            f = self.pbw.expand(self.pbw.monomial(z, chi, Direction.LEFT, "F"))
            for (left, right), c in algebra.coproduct(f).terms.items():
                for phi, a in self._f_coordinates_of(left[2], z).items():
                    for psi, b in self._f_coordinates_of(right[2], z).items():
                        _add(d, (chi, phi, psi), c * a * b)
        logger.debug("structure constants of %s up to height %d: %d m, %d d", z, bound, len(m), len(d))
        return StructureConstants(z, m, d)

    @staticmethod
    def _exponent_height(roots: Sequence[Weight], ks: Exponents) -> int:
        return sum(k * _height(root) for root, k in zip(roots, ks))

    def verify_tanisaki(self, z: Word | None = None, bound: int = 2) -> dict[str, bool]:
        """c_χ m^{ψ,φ}_χ = c_ψ c_φ d^χ_{φ,ψ} and the grading χ⃗ = φ⃗ + ψ⃗, within the height bound."""
        constants = self.structure_constants(z, bound)
        roots = self.system.inversion_sequence(constants.word)

        def c(ks: Exponents) -> Scalar:
            if not any(ks):
                return self.ring.one
            return self.pairing_coefficient(ExponentFunction.along(roots, ks))

        def vector(ks: Exponents) -> Weight:
            return ExponentFunction.along(roots, ks).vector if any(ks) else self.algebra.zero_weight

        zero = self.ring.zero
        report = {"grading": True, "coefficient identity": True}
        for (psi, phi, chi), value in constants.m.items():
            if vector(chi) != tuple(a + b for a, b in zip(vector(psi), vector(phi))):
                report["grading"] = False
        keys = {k for k in constants.m} | {(psi, phi, chi) for chi, phi, psi in constants.d}
        for psi, phi, chi in keys:
            if self._exponent_height(roots, chi) > bound:
                continue
            lhs = c(chi) * constants.m.get((psi, phi, chi), zero)
            rhs = c(psi) * c(phi) * constants.d.get((chi, phi, psi), zero)
            if not self.ring.equal(lhs, rhs):
                logger.info("pairing identity fails at ψ=%s φ=%s χ=%s", psi, phi, chi)
                report["coefficient identity"] = False
        return report

    def tanisaki_13(self, p: TensorElement) -> TensorElement:
        """x⊗y ↦ x ⊗ K^{wt y} ⊗ y, the image of 𝒫 in legs 1 and 3."""
        algebra = self.algebra
        total = _zero_tensor(algebra, 3)
        for (a, b), c in p.terms.items():
            total = total + algebra.tensor(algebra.term(a), algebra.K(algebra.term_weight(b)), algebra.term(b)) * c
        return total

    def tanisaki_difference(self, w: Word) -> TensorElement:
        """(id⊗Δ)(𝒫•_{◂w}) − 𝕁₁₂(𝒫•₁₃)·𝒫•₁₂."""
        algebra = self.algebra
        p = self.partial(w).expansion
        return algebra.coproduct_leg(p, 1) - self.tanisaki_13(p) * algebra.leg_embed(p, (0, 1))

    def rank_one_tanisaki_remainder(self, i: int) -> TensorElement:
        """−Σ_{s,t<ℓ̄, s+t≥ℓ̄} (c_s c_t)⁻¹ E_i^{s+t} ⊗ K_i^{−s}F_i^t ⊗ F_i^s."""
        algebra = self.algebra
        root = self.system.simple(i)
        top = self.ell_bar(root)
        inverse = self.simple_coefficients(self.system.d_of(root), top)
        total = _zero_tensor(algebra, 3)
        for s in range(top):
            for t in range(top):
                if s + t >= top:
                    term = algebra.tensor(algebra.E(i, s + t), algebra.K(i, -s) * algebra.F(i, t), algebra.F(i, s))
                    total = total - term * (inverse[s] * inverse[t])
        return total

    def verify_tanisaki_truncated(self, w: Word | None = None) -> dict[str, bool]:
        algebra = self.algebra
        w = self.pbw.canonical_word() if w is None else tuple(w)
        difference = self.tanisaki_difference(w)
        report = {"difference ∈ 𝒩••³": self.center.ideal_member(difference, IdealSpec(IdealKind.N_BULLET, legs=3))}
        if len(w) == 1:
            report["rank one remainder"] = algebra.tensor_equal(difference, self.rank_one_tanisaki_remainder(w[0]))
            report["difference ≠ 0"] = not algebra.tensor_equal(difference, _zero_tensor(algebra, 3))
        return report

    # restricted quotient

    def restricted_coordinates(self, x: AlgebraElement, z: Word | None = None) -> dict[PBWMonomial, Scalar]:
        """PBW coordinates of x ∈ U⁺ with every exponent below ℓ̄_α."""
        self._require_root_of_unity()
        coordinates = self.pbw.coordinates(x, z)
        return {m: c for m, c in coordinates.items() if all(k < self.ell_bar(root) for root, k in m.psi.values)}

    def restricted_dimension(self, weight: Weight | None = None) -> int:
        """Number of restricted PBW monomials of U⁺, in one weight or altogether."""
        roots = self.system.inversion_sequence(self.pbw.canonical_word())
        bars = [self.ell_bar(root) for root in roots]
        if weight is None:
            total = 1
            for b in bars:
                total *= b
            return total
        return sum(1 for ks in exponent_vectors(roots, tuple(weight)) if all(k < b for k, b in zip(ks, bars)))

    def reduce_tensor(self, t: TensorElement) -> dict[tuple, Scalar]:
        """Leg-wise PBW coordinates of t with the 𝒩••-exceeding basis tensors dropped."""
        center = self.center
        z = self.pbw.canonical_word()
        total: dict[tuple, Scalar] = {}
        for key, c in t.terms.items():
            parts = [center.pbw_decomposition(self.algebra.term(part), z, z) for part in key]
            for combo in product(*(p.items() for p in parts)):
                value = c
                for _, v in combo:
                    value = value * v
                _add(total, tuple(k for k, _ in combo), value)
        n = len(z)
        return {
            k: v
            for k, v in total.items()
            if not any(center._exceeds(phi, z, n) or center._exceeds(chi, z, n) for phi, _, chi in k)
        }

    def restricted_coproduct(self, x: AlgebraElement, twisted: bool = False) -> dict[tuple, Scalar]:
        """Δ(x), or 𝒫•_{◂z}Δ(x)𝒫̄•_{z▸} when twisted, reduced in the canonical word."""
        algebra = self.algebra
        value = algebra.coproduct(x)
        if twisted:
            z = self.pbw.canonical_word()
            value = self.partial(z).expansion * value * self.partial_bar(z).expansion
        return self.reduce_tensor(value)

    def verify_restricted(self, x: AlgebraElement) -> dict[str, bool]:
        """The conjugated coproduct agrees with Δ̄ in the restricted quotient."""
        algebra = self.algebra
        z = self.pbw.canonical_word()
        conjugated = self.partial(z).expansion * algebra.coproduct(x) * self.partial_bar(z).expansion
        return {
            "𝒫Δ𝒫̄ ≡ Δ̄": self.center.ideal_member(conjugated - algebra.delta_bar(x), IdealSpec(IdealKind.N_BULLET)),
        }

    def verify_bi_ideal(self, v: Word) -> dict[str, bool]:
        """Δ(X_v) ∈ 𝒩*(v), ε(X_v) = 0 and S(X_v) ∈ 𝒦̂(v, v)."""
        algebra = self.algebra
        center = self.center
        x = center.element(center.X(tuple(v)))
        return {
            "Δ(X_v) ∈ 𝒩*": center.ideal_member(algebra.coproduct(x), IdealSpec(IdealKind.N_STAR, tuple(v))),
            "ε(X_v) = 0": not algebra.counit(x),
            "S(X_v) ∈ 𝒦̂": center.ideal_member(algebra.antipode(x), IdealSpec(IdealKind.K_HAT, tuple(v), tuple(v))),
        }

    # uniqueness

    def tanisaki_inverse(self, t: TensorElement) -> TensorElement:
        """𝕁⁻¹(x⊗y) = q^{(μ|ν)} xK^ν ⊗ yK^μ."""
        algebra = self.algebra
        result = _zero_tensor(algebra, 2)
        for (a, b), c in t.terms.items():
            mu, nu = algebra.term_weight(a), algebra.term_weight(b)
            left = algebra.term(a) * algebra.K(nu)
            right = algebra.term(b) * algebra.K(mu)
            result = result + algebra.tensor(left, right) * (c * self.ring.qpow(algebra.pair(mu, nu)))
        return result

    def antipode2(self, t: TensorElement) -> TensorElement:
        algebra = self.algebra
        return algebra.map_leg(algebra.map_leg(t, 0, algebra.antipode), 1, algebra.antipode)

    def tilde_inverse(self, z: Word) -> TensorElement:
        """𝒫̃_{◂z} = Σ (−1)^{ht ψ⃗} q^{(ρ|ψ⃗) − (ψ⃗|ψ⃗)/2} c_ψ⁻¹ E^ψ_{◂z}⊗F^ψ_{◂z†} over the truncation."""
        z = tuple(z)
        if not self.system.is_maximal(z):
            raise NotReduced(f"{z} is not a maximal reduced word")
        algebra, system = self.algebra, self.system
        dagger = system.dagger(z)
        roots = system.inversion_sequence(z)
        total = _zero_tensor(algebra, 2)
        for ks in product(*self.truncation(z)):
            psi = ExponentFunction.along(roots, ks)
            v = psi.vector
            twice = system.ipair(v, v) - int(2 * system.pair(system.rho, v))
            c = self.ring((-1) ** sum(v)) * self.ring.qpow(-twice // 2) / self.pairing_coefficient(psi)
            if not psi.values:
                total = total + algebra.tensor(algebra.one, algebra.one) * c
                continue
            e = self.pbw.expand(PBWMonomial(z, psi, Direction.LEFT, "E"))
            f = self.pbw.expand(PBWMonomial(dagger, psi, Direction.LEFT, "F"))
            total = total + algebra.tensor(e, f) * c
        return total


    def verify_uniqueness(self) -> dict[str, bool]:
        algebra = self.algebra
        center = self.center
        bullet = IdealSpec(IdealKind.N_BULLET)
        z = self.pbw.canonical_word()
        p = self.partial(z).expansion
        u = lambda x: algebra.involution("u", x)  # noqa: E731
        report = {
            "𝔘⊗𝔘(𝒫) ≡ 𝒫": center.ideal_member(algebra.map_leg(algebra.map_leg(p, 0, u), 1, u) - p, bullet),
            "(S⊗S)(𝒫) ≡ 𝕁⁻¹(𝒫)": center.ideal_member(self.antipode2(p) - self.tanisaki_inverse(p), bullet),
        }
        for other in self.system.maximal_words():
            if other != z:
                difference = self.partial(other).expansion - p
                report[f"𝒫◂{other} ≡ 𝒫◂{z}"] = center.ideal_member(difference, bullet)
        if algebra.rank <= 2:
            difference = self.tilde_inverse(z) - self.tilde_inverse(self.system.dagger(z))
            report["𝒫̃◂z ≡ 𝒫̃◂z†"] = center.ideal_member(difference, bullet)
        return report

    # generic q

    def generic_partial(self, w: Word, bound: int) -> TensorElement:
        """Σ c_ψ⁻¹ E^ψ_{◂w}⊗F^ψ_{◂w} over ψ of E-height at most ``bound``."""
        if self.algebra.root_of_unity is not None:
            raise InvalidRootOfUnity("the untruncated quasi-R-matrix needs generic q")
        roots = self.system.inversion_sequence(w)
        coefficients = []
        for ks in exponents_up_to(roots, bound):
            psi = ExponentFunction.along(roots, ks)
            coefficients.append((psi, self.ring.one / self.pairing_coefficient(psi)))
        return self.closed_sum(w, coefficients)

    def generic_partial_check(self, w: Word, x: AlgebraElement, bound: int) -> dict[str, bool]:
        """𝒫_{◂w}Δ(Γ_w x) = Γ_w^{⊗2}(Δx)𝒫_{◂w} in every component the truncation determines."""
        algebra = self.algebra
        w = tuple(w)
        p = self.generic_partial(w, bound)
        left_factor = algebra.coproduct(algebra.gamma_word(w, x))
        right_factor = self.gamma2(w, algebra.coproduct(x))
        lowest = min(
            (_height(algebra.term_weight(key[0])) for t in (left_factor, right_factor) for key in t.terms),
            default=0,
        )
        cutoff = bound + lowest
        difference = algebra.oracle.canonical_tensor(p * left_factor - right_factor * p)
        determined = [key for key in difference if _height(algebra.term_weight(key[0])) <= cutoff]
        return {
            f"components up to height {cutoff}": not determined,
            "discrepancy only above the bound": all(_height(algebra.term_weight(k[0])) > cutoff for k in difference),
        }

    # ideal lattice

    def _random_factor(self) -> AlgebraElement:
        algebra = self.algebra
        choice = random.randrange(3)
        letters = random_word(algebra.rank, random.randint(0, 1))
        if choice == 0:
            return algebra.E_word(letters)
        if choice == 1:
            return algebra.F_word(letters)
        return algebra.K(random.randint(1, algebra.rank), random.choice((-1, 1)))

    def verify_ideal_lattice(self, w: Word, samples: int = 100) -> dict[str, bool]:
        """Random members of 𝒩∘(w) lie in 𝒩(w) and 𝒩*(w); Ω# fixes the generators of 𝒩(w)."""
        algebra = self.algebra
        center = self.center
        w = tuple(w)
        kinds = (IdealKind.N_CIRC, IdealKind.N, IdealKind.N_STAR)
        report = {f"𝒩∘ ⊆ {kind.value}": True for kind in kinds}
        for _ in range(samples):
            a = random_prefix(w)
            b = random_prefix(w)
            generator = algebra.tensor(center.element(center.X(a)), center.element(center.Y(b)))
            left = algebra.tensor(self._random_factor(), self._random_factor())
            right = algebra.tensor(self._random_factor(), self._random_factor())
            member = left * generator * right
            for kind in kinds:
                if not center.ideal_member(member, IdealSpec(kind, w)):
                    report[f"𝒩∘ ⊆ {kind.value}"] = False
        n = IdealSpec(IdealKind.N, w)
        for k in range(1, len(w) + 1):
            x = center.element(center.X(w[:k]))
            y = center.element(center.Y(w[:k]))
            generators = {
                f"X{w[:k]}⊗1": algebra.tensor(x, algebra.one),
                f"1⊗Y{w[:k]}": algebra.tensor(algebra.one, y),
            }
            for name, generator in generators.items():
                report[f"Ω#({name}) ∈ 𝒩"] = center.ideal_member(algebra.omega_sharp(generator), n)
        return report

    def verify_leg_bookkeeping(self, samples: int = 20) -> dict[str, bool]:
        """Leg embeddings commute with the flip: (t^{op})₁₂ = t₂₁ and t₁₃ is t₁₂ with legs 2 and 3 swapped."""
        algebra = self.algebra
        report = {"flip": True, "13 = swap(12)": True}
        for _ in range(samples):
            t = algebra.tensor(self._random_factor(), self._random_factor())
            if algebra.leg_embed(algebra.flip(t), (0, 1)) != algebra.leg_embed(t, (1, 0)):
                report["flip"] = False
            swapped = _permute_legs(algebra, algebra.leg_embed(t, (0, 1)), (0, 2, 1))
            if swapped != algebra.leg_embed(t, (0, 2)):
                report["13 = swap(12)"] = False
        return report


def _zero_tensor(algebra: QuantumAlgebra, legs: int) -> TensorElement:
    from .uqcore import TensorElement

    return TensorElement(algebra, legs)


def _permute_legs(algebra: QuantumAlgebra, t: TensorElement, order: tuple[int, ...]) -> TensorElement:
    from .uqcore import TensorElement

    return TensorElement(algebra, t.legs, {tuple(key[k] for k in order): c for key, c in t.terms.items()})


__all__ = [
    "CASES",
    "Flavor",
    "QuasiRMatrices",
    "StructureConstants",
    "TruncatedP",
    "exponents_up_to",
]
