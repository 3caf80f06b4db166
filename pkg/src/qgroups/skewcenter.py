"""Primitive power generators at a root of unity and their sign calculus.

``X_w = E_w^{ℓ̄_w}``, ``Y_w = F_w^{ℓ̄_w}`` and ``L^μ = K^{Σ μ_i ℓ̄_i α_i}`` commute with
every homogeneous element up to a sign that only depends on the mod-2 grading
(𝔬⁺, 𝔬⁻). Polynomials in these generators are kept as dictionaries keyed by
ordered monomials; they are realized in U_ζ only when an oracle comparison
is needed.
"""

from __future__ import annotations

import enum
import logging
import threading
from dataclasses import dataclass
from itertools import product
from math import comb
from typing import TYPE_CHECKING, Annotated, Iterable, Iterator, Literal, Mapping, Sequence

from sympy import Matrix
from sympy.polys.matrices import DomainMatrix
from typing_extensions import Doc

from .coxeter import CartanData, RootSystem, WeylElement, build_root_system, cartan_type
from .errors import InvalidRootOfUnity, NotPrefix, ReductionError, UnsupportedType
from .pbw import Direction, Kind, exponent_vectors, rank2_indices, type_a_pair, type_a_position, type_a_word
from .qring import RootOfUnityContext, Scalar, is_gaussian_integer, qnum, root_of_unity
from .types import Exponents, Parity, Weight, Word

if TYPE_CHECKING:
    from .uqcore import AlgebraElement, QuantumAlgebra, TensorElement, Term

logger = logging.getLogger(__name__)

GeneratorKind = Literal["X", "Y", "L"]

GElement = tuple[Parity, Parity]
"""(μ̄, ν̄) ∈ 𝔽₂^Δ × 𝔽₂^Δ."""


@dataclass(frozen=True, slots=True, order=True)
class PrimitivePower:
    """X_w, Y_w or L^μ; ``hat`` marks the integral normalization X̂_w."""

    kind: GeneratorKind
    word: Word = ()
    mu: Weight = ()
    hat: bool = False

    def __str__(self) -> str:
        if self.kind == "L":
            return "L^(" + ",".join(map(str, self.mu)) + ")"
        name = self.kind + ("̂" if self.hat else "")
        return f"{name}_({''.join(map(str, self.word))})"


ZMonomial = tuple[tuple[PrimitivePower, int], ...]
"""Ordered product of generator powers."""

ZPolynomial = dict[ZMonomial, Scalar]

ZTensor = dict[tuple[ZMonomial, ZMonomial], Scalar]


def monomial(*factors: tuple[PrimitivePower, int]) -> ZMonomial:
    return tuple((p, k) for p, k in factors if k and not (p.kind == "L" and not any(p.mu)))


def format_monomial(m: ZMonomial) -> str:
    return " ".join(str(p) + (f"^{k}" if k != 1 else "") for p, k in m) or "1"


def _accumulate(target: dict, key: object, value: Scalar) -> None:
    total = target.get(key)
    total = value if total is None else total + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


# signs


class SignTable:
    """κ, π, ε and the 𝒢-action for one root system at one root of unity."""

    def __init__(self, system: RootSystem, ctx: RootOfUnityContext) -> None:
        self.system = system
        self.ctx = ctx
        self.rank = system.rank

    def ell_bar(self, alpha: Weight) -> int:
        """ℓ̄_α, the order of ζ_α²."""
        return self.ctx.ell_bar_d(self.system.d_of(alpha))

    def xi(self, alpha: Weight) -> int:
        """ξ_α = ζ_α^{ℓ̄_α} ∈ {±1}."""
        return self.ctx.xi(self.system.d_of(alpha))

    def kappa(
        self,
        alpha: Annotated[Weight, Doc("a root")],
        mu: Annotated[Weight | Parity, Doc("any integral representative of μ̄")],
    ) -> int:
        """κ(α, μ̄) = ξ_α^{⟨α, μ⟩}."""
        if self.system.coroot_pairing(alpha, mu) % 2 == 0:
            return 1
        return self.xi(alpha)

    def pi(self, alpha: Weight, beta: Weight) -> int:
        """π(α, β) = κ(α, ℓ̄_β β), the sign in X_α X_β = π(α, β) X_β X_α."""
        return self.kappa(alpha, tuple(self.ell_bar(beta) * c for c in beta))

    def epsilon(self, nu: Parity, mu: Parity) -> int:
        """ε(ν̄, μ̄) = (−1)^{(ν|μ)}."""
        return -1 if self.system.ipair(nu, mu) % 2 else 1

    def g_pairing(self, g: GElement, h: GElement) -> int:
        """v(g, h) = ε(μ̄, μ̄′) ε(ν̄, ν̄′)."""
        return self.epsilon(g[0], h[0]) * self.epsilon(g[1], h[1])

    def zeta_hat(self, psi: Mapping[Weight, int], chi: Mapping[Weight, int]) -> int:
        """ζ̂(ψ, χ) = Π π(α, β)^{ψ(α)χ(β)}, the sign in X^ψ X^χ = ζ̂ X^χ X^ψ."""
        sign = 1
        for alpha, a in psi.items():
            for beta, b in chi.items():
                if (a * b) % 2:
                    sign *= self.pi(alpha, beta)
        return sign

    def zeta_signs(self, psi: Exponents, phi: Exponents, roots: Sequence[Weight]) -> int:
        """ζ(ψ, φ)_w = Π_{α <_w β} π(α, β)^{ψ(β)φ(α)} along the inversion sequence of w."""
        sign = 1
        for a in range(len(roots)):
            for b in range(a + 1, len(roots)):
                if (psi[b] * phi[a]) % 2:
                    sign *= self.pi(roots[a], roots[b])
        return sign

    def kappa_arrow(self, psi: Exponents, rho: Exponents, roots: Sequence[Weight]) -> int:
        """The sign in X^ψ_{w▸} E^ρ_{w▸} = κ⃗ E^{𝔩ψ+ρ}_{w▸}."""
        sign = 1
        for a in range(len(roots)):
            for b in range(a + 1, len(roots)):
                if (psi[b] * rho[a]) % 2:
                    sign *= self.kappa(roots[b], roots[a])
        return sign

    def kappa_bar(self, psi: Exponents, rho: Exponents, roots: Sequence[Weight]) -> int:
        """The sign in X^ψ_{◂w} E^ρ_{◂w} = κ̄ E^{𝔩ψ+ρ}_{◂w}."""
        sign = 1
        for a in range(len(roots)):
            for b in range(a + 1, len(roots)):
                if (psi[a] * rho[b]) % 2:
                    sign *= self.kappa(roots[a], roots[b])
        return sign

    # 𝒢-action

    def parity(self, p: PrimitivePower) -> GElement:
        zero = (0,) * self.rank
        match p.kind:
            case "X":
                return tuple(c % 2 for c in self.system.gamma(p.word)), zero
            case "Y":
                return zero, tuple(c % 2 for c in self.system.gamma(p.word))
        bits = tuple(c % 2 for c in p.mu)
        return bits, bits

    def act(self, g: GElement, p: PrimitivePower) -> int:
        """The sign of g▷p."""
        mu, nu = g
        match p.kind:
            case "X":
                return self.kappa(self.system.gamma(p.word), mu)
            case "Y":
                return self.kappa(self.system.gamma(p.word), nu)
        total = tuple(a + b for a, b in zip(mu, nu))
        sign = 1
        for i, power in enumerate(p.mu, start=1):
            if power % 2:
                sign *= self.kappa(self.system.simple(i), total)
        return sign

    def group(self) -> Iterator[GElement]:
        bits = list(product((0, 1), repeat=self.rank))
        for mu in bits:
            for nu in bits:
                yield mu, nu

    def pairing_nondegenerate(self) -> bool:
        """ε is nondegenerate on 𝔽₂^Δ."""
        return Matrix(self.system.cartan.B).det() % 2 != 0

    def verify_pairing_action(self, generators: Iterable[PrimitivePower]) -> dict[str, bool]:
        """h▷W = v(g, h)W for W of parity g; holds for even ℓ in the oddly laced types."""
        report = {}
        for p in generators:
            g = self.parity(p)
            for h in self.group():
                report[f"{h}▷{p}"] = self.act(h, p) == self.g_pairing(g, h)
        return report


# classification


def _family(cartan: CartanData) -> str:
    return cartan.family


def classify_central(
    system: RootSystem,
    ctx: RootOfUnityContext,
    s: WeylElement,
    *,
    method: Literal["literal", "signs"] = "literal",
) -> bool:
    """Whether 𝒵_w⁺ is central in U_ζ for any reduced word w of s."""
    roots = system.inversion_set(s)
    if not roots:
        return True
    if method == "signs":
        signs = SignTable(system, ctx)
        return all(signs.kappa(a, system.simple(k)) == 1 for a in roots for k in range(1, system.rank + 1))
    ell, family = ctx.ell, _family(system.cartan)
    return (
        ell % 2 == 1
        or (ell % 4 != 0 and family == "B")
        or (ell % 4 == 2 and family in ("C", "F") and not any(system.is_short(a) for a in roots))
        or (family == "B" and not any(system.is_long(a) for a in roots))
    )


def classify_commutative(
    system: RootSystem,
    ctx: RootOfUnityContext,
    s: WeylElement,
    *,
    method: Literal["literal", "signs"] = "literal",
) -> bool:
    """Whether 𝒵_w⁺ is commutative."""
    roots = system.inversion_set(s)
    if method == "signs":
        signs = SignTable(system, ctx)
        return all(signs.pi(a, b) == 1 for a in roots for b in roots)
    ell, family = ctx.ell, _family(system.cartan)
    return (
        system.mod2_discrete(s, "all")
        or ell % 2 == 1
        or ell % 8 == 0
        or (ell % 4 == 0 and family in ("A", "D", "E", "G"))
        or (ell % 4 == 2 and family in ("B", "C", "F") and system.mod2_discrete(s, "short"))
        or (ell % 8 == 4 and family in ("B", "C", "F") and system.mod2_discrete(s, "long"))
    )


def single_central(system: RootSystem, ctx: RootOfUnityContext, alpha: Weight) -> bool:
    """Whether X_v with γ(v) = α is central."""
    ell, family = ctx.ell, _family(system.cartan)
    return ell % 2 == 1 or (ell % 4 == 2 and system.d_of(alpha) == 2) or (family == "B" and system.is_short(alpha))


def single_commuting(system: RootSystem, ctx: RootOfUnityContext, alpha: Weight) -> bool:
    """Whether X_v with γ(v) = α commutes with every X_w."""
    ell, family = ctx.ell, _family(system.cartan)
    short = system.is_short(alpha)
    return (
        ell % 2 == 1
        or ell % 8 == 0
        or (ell % 4 == 2 and family == "B")
        or (ell % 4 == 2 and family in ("C", "F") and system.is_long(alpha))
        or (ell % 8 == 4 and family in ("A", "C", "D", "E", "G"))
        or (ell % 8 == 4 and family == "F" and short)
        or (family == "B" and short)
    )


def maximal_commutative(cartan: CartanData, ell: int) -> bool:
    """Whether 𝒵_z⁺ is commutative for a maximal word z."""
    family = _family(cartan)
    return (
        cartan.type_label == "A1"
        or ell % 8 in (0, 1, 3, 5, 7)
        or (ell % 8 in (2, 6) and family == "B")
        or (ell % 8 == 4 and family in ("A", "C", "D", "E", "G"))
    )


def classification_context(cartan: CartanData, ell: int) -> RootOfUnityContext:
    """A context for sign questions; unlike the algebra it accepts G₂ with ℓ̄ = 4."""
    if ell in {1, 2, cartan.e, 2 * cartan.e} or ell < 1:
        raise InvalidRootOfUnity(f"ℓ = {ell} is excluded for {cartan.type_label}")
    return root_of_unity(cartan, ell, guarded=False)


def decision_table(label: str, ells: Iterable[int]) -> list[dict[str, object]]:
    """Rows type × ℓ (mod 8) × variant for the longest element, with counts over 𝒲."""
    cartan = cartan_type(label)
    system = build_root_system(cartan)
    longest = system.longest
    rows: list[dict[str, object]] = []
    for ell in ells:
        ctx = classification_context(cartan, ell)
        for variant, classify in (("central", classify_central), ("commutative", classify_commutative)):
            literal = [classify(system, ctx, s) for s in system.elements]
            signs = [classify(system, ctx, s, method="signs") for s in system.elements]
            rows.append(
                {
                    "type": label,
                    "ell": ell,
                    "ell_mod_8": ell % 8,
                    "variant": variant,
                    "maximal": classify(system, ctx, longest),
                    "elements": sum(literal),
                    "of": len(literal),
                    "agrees": literal == signs,
                }
            )
    logger.debug("decision table for %s: %d rows", label, len(rows))
    return rows


# ideals


class IdealKind(enum.Enum):
    K_PLUS = "K+"
    K_GEQ = "K≥0"
    K_HAT = "K̂"
    N_CIRC = "N∘"
    N = "N"
    N_STAR = "N*"
    N_BULLET = "N••"


@dataclass(frozen=True, slots=True)
class IdealSpec:
    """An ideal of U_ζ or of a tensor power, anchored at reduced words."""

    kind: IdealKind
    u: Word = ()
    v: Word = ()
    legs: Annotated[int, Doc("number of tensor legs of N••")] = 2


Decomposition = dict[tuple[Exponents, Weight, Exponents], Scalar]
"""Coordinates in the basis E^φ_{z▸} K^ν F^χ_{◂z′}."""


class SkewCenter:
    """The subalgebra 𝒵 generated by primitive powers, for one algebra at a root of unity."""

    def __init__(self, algebra: QuantumAlgebra) -> None:
        ctx = algebra.root_of_unity
        if ctx is None:
            raise InvalidRootOfUnity("primitive power generators need ℓ > 0")
        self.algebra = algebra
        self.ctx = ctx
        self.system = algebra.system
        self.ring = algebra.ring
        self.pbw = algebra.pbw
        self.signs = SignTable(self.system, ctx)
        self.rank = algebra.rank
        self._elements: dict[PrimitivePower, AlgebraElement] = {}
        self._coordinates: dict[tuple[Kind, Word, Word], dict[Exponents, Scalar]] = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"SkewCenter({self.algebra.cartan.type_label}, ell={self.ctx.ell})"

    # generators

    def X(self, word: Word, hat: bool = False) -> PrimitivePower:
        self.system.gamma(tuple(word))
        return PrimitivePower("X", tuple(word), hat=hat)

    def Y(self, word: Word, hat: bool = False) -> PrimitivePower:
        self.system.gamma(tuple(word))
        return PrimitivePower("Y", tuple(word), hat=hat)

    def L(self, mu: Weight | int, power: int = 1) -> PrimitivePower:
        """L^μ for a weight μ, or L_i^power for an index i."""
        if isinstance(mu, int):
            mu = tuple(power * int(k == mu - 1) for k in range(self.rank))
        return PrimitivePower("L", mu=tuple(mu))

    def generators(self, w: Word) -> list[PrimitivePower]:
        """X_v, Y_v for ∅ ≠ v ≤_R w and the L_i."""
        self.system.inversion_sequence(w)
        prefixes = [tuple(w[:k]) for k in range(1, len(w) + 1)]
        return (
            [self.X(v) for v in prefixes]
            + [self.Y(v) for v in prefixes]
            + [self.L(i) for i in range(1, self.rank + 1)]
        )

    def gamma(self, p: PrimitivePower) -> Weight:
        return self.system.gamma(p.word)

    def weight(self, p: PrimitivePower) -> Weight:
        """𝔴(X_w) = ℓ̄_α α, 𝔴(Y_w) = −ℓ̄_α α, 𝔴(L^μ) = 0."""
        if p.kind == "L":
            return (0,) * self.rank
        alpha = self.gamma(p)
        sign = 1 if p.kind == "X" else -1
        return tuple(sign * self.signs.ell_bar(alpha) * c for c in alpha)

    def monomial_weight(self, m: ZMonomial) -> Weight:
        total = [0] * self.rank
        for p, k in m:
            for index, c in enumerate(self.weight(p)):
                total[index] += k * c
        return tuple(total)

    def nabla(self, d: int) -> Scalar:
        """∇_d = (ζ_d − ζ_d⁻¹)^{ℓ̄_d}."""
        return (self.ring.qpow(d) - self.ring.qpow(-d)) ** self.ctx.ell_bar_d(d)

    def hat_factor(self, alpha: Weight) -> Scalar:
        """X̂_α / X_α = ζ_α^{binom(ℓ̄_α, 2)} (ζ_α⁻¹ − ζ_α)^{ℓ̄_α}."""
        d = self.system.d_of(alpha)
        lb = self.ctx.ell_bar_d(d)
        return self.ring.qpow(d * comb(lb, 2)) * (self.ring.qpow(-d) - self.ring.qpow(d)) ** lb

    # realization in U_ζ

    def element(self, p: PrimitivePower) -> AlgebraElement:
        cached = self._elements.get(p)
        if cached is not None:
            return cached
        match p.kind:
            case "L":
                nu = tuple(m * self.ctx.ell_bar_d(d) for m, d in zip(p.mu, self.algebra.cartan.d))
                value = self.algebra.K(nu)
            case kind:
                alpha = self.gamma(p)
                vector = self.pbw.root_vector(p.word, "E" if kind == "X" else "F")
                value = vector ** self.signs.ell_bar(alpha)
                if p.hat:
                    value = value * self.hat_factor(alpha)
        with self._lock:
            value = self._elements.setdefault(p, value)
        return value

    def realize_monomial(self, m: ZMonomial) -> AlgebraElement:
        value = self.algebra.one
        for p, k in m:
            if p.kind == "L":
                value = value * self.element(PrimitivePower("L", mu=tuple(k * c for c in p.mu)))
            else:
                value = value * self.element(p) ** k
        return value

    def realize(self, poly: Mapping[ZMonomial, Scalar]) -> AlgebraElement:
        total = self.algebra.zero
        for m, c in poly.items():
            total = total + self.realize_monomial(m) * c
        return total

    def realize_tensor(self, t: Mapping[tuple[ZMonomial, ZMonomial], Scalar]) -> TensorElement:
        from .uqcore import TensorElement

        total = TensorElement(self.algebra, 2)
        for (a, b), c in t.items():
            total = total + self.algebra.tensor(self.realize_monomial(a), self.realize_monomial(b)) * c
        return total

    def format(self, poly: Mapping[ZMonomial, Scalar]) -> str:
        chunks = []
        for m, c in sorted(poly.items(), key=lambda kv: kv[0]):
            chunks.append(f"({self.ring.to_text(c)}) {format_monomial(m)}")
        return " + ".join(chunks) or "0"

    def format_tensor(self, t: Mapping[tuple[ZMonomial, ZMonomial], Scalar]) -> str:
        chunks = []
        for (a, b), c in sorted(t.items(), key=lambda kv: kv[0]):
            chunks.append(f"({self.ring.to_text(c)}) {format_monomial(a)} (x) {format_monomial(b)}")
        return " + ".join(chunks) or "0"

    # monomials

    def x_monomial(
        self,
        w: Word,
        psi: Exponents,
        direction: Direction = Direction.RIGHT,
        kind: Literal["X", "Y"] = "X",
    ) -> ZMonomial:
        """X^ψ_{w▸} (or ◂, or Y) with ψ listed along the inversion sequence of w."""
        roots = self.system.inversion_sequence(w)
        if len(psi) != len(roots):
            raise ValueError(f"{psi} does not match the {len(roots)} roots of {w}")
        positions = list(range(len(roots)))
        if direction is Direction.LEFT:
            positions.reverse()
        return tuple((PrimitivePower(kind, tuple(w[: k + 1])), psi[k]) for k in positions if psi[k])

    def _scaled_roots(self, w: Word) -> list[Weight]:
        return [tuple(self.signs.ell_bar(b) * c for c in b) for b in self.system.inversion_sequence(w)]

    def x_monomials(self, z: Word, weight: Weight, kind: Literal["X", "Y"] = "X") -> list[ZMonomial]:
        """Every X^ψ_{z▸} of the given (nonnegative) weight."""
        return [self.x_monomial(z, ks, kind=kind) for ks in exponent_vectors(self._scaled_roots(z), tuple(weight))]

    # commutation with U_ζ

    def grading(self, b: AlgebraElement) -> GElement:
        """𝔬*(b) = (𝔬⁺(b), 𝔬⁻(b)) of a homogeneous element."""
        grades = {(plus, minus) for _, plus, minus in self.algebra.grade(b).values()}
        if len(grades) != 1:
            raise ValueError("element is not homogeneous for (𝔬⁺, 𝔬⁻)")
        return grades.pop()

    def kappa_hat(self, w: Word, b: AlgebraElement, side: Literal["+", "-"] = "+") -> int:
        """κ̂(w, b)^± = κ(γ(w), 𝔬^±(b))."""
        plus, minus = self.grading(b)
        return self.signs.kappa(self.system.gamma(w), plus if side == "+" else minus)

    def commutation_sign(self, p: PrimitivePower, b: AlgebraElement) -> int:
        """The sign in W·b = ±b·W."""
        return self.signs.act(self.grading(b), p)

    def skew_commutes(self, p: PrimitivePower, b: AlgebraElement) -> bool:
        W = self.element(p)
        return self.algebra.equal(W * b, b * W * self.commutation_sign(p, b))

    def skew_commute_verify(self, w: Word) -> dict[str, bool]:
        """W·b = b·𝔬*(b)▷W for W ∈ {X_w, Y_w} and every generator b, with X_wY_w = Y_wX_w and L_iX_w = π X_wL_i."""
        report: dict[str, bool] = {}
        x, y = self.X(w), self.Y(w)
        for p in (x, y):
            for label, b in self.algebra.generators():
                report[f"{p}·{label}"] = self.skew_commutes(p, b)
        report[f"{x}·{y}"] = self.algebra.equal(self.element(x) * self.element(y), self.element(y) * self.element(x))
        alpha = self.gamma(x)
        for i in range(1, self.rank + 1):
            L = self.element(self.L(i))
            sign = self.signs.pi(self.system.simple(i), alpha)
            report[f"L_{i}·{x}"] = self.algebra.equal(L * self.element(x), self.element(x) * L * sign)
        logger.debug("skew commutation of %s: %d checks", w, len(report))
        return report

    def verify_gamma_simple(self, i: int) -> dict[str, bool]:
        """Γ_i(X_i) = −L_i⁻¹Y_i and Γ_i(Y_i) = −L_iX_i."""
        x, y = self.element(self.X((i,))), self.element(self.Y((i,)))
        return {
            f"Γ_{i}(X_{i})": self.algebra.equal(self.algebra.gamma(i, x), -(self.element(self.L(i, -1)) * y)),
            f"Γ_{i}(Y_{i})": self.algebra.equal(self.algebra.gamma(i, y), -(self.element(self.L(i)) * x)),
        }

    def central_brute(self, w: Word) -> bool:
        """Every X_v, ∅ ≠ v ≤_R w, commutes with every E_k, F_k and K_k."""
        for k in range(1, len(w) + 1):
            W = self.element(self.X(w[:k]))
            for _, b in self.algebra.generators():
                if not self.algebra.equal(W * b, b * W):
                    return False
        return True

    def commutative_brute(self, w: Word) -> bool:
        xs = [self.element(self.X(w[:k])) for k in range(1, len(w) + 1)]
        return all(self.algebra.equal(a * b, b * a) for n, a in enumerate(xs) for b in xs[n + 1 :])

    # monomial relations

    def verify_monomial_relations(self, w: Word, psi: Exponents, phi: Exponents) -> dict[str, bool]:
        """X^ψ X^φ = ζ(ψ, φ) X^{ψ+φ} in both directions, and X^ψ_{w▸} = ζ(ψ, ψ) X^ψ_{◂w}."""
        roots = self.system.inversion_sequence(w)
        realize, equal = self.realize_monomial, self.algebra.equal
        both = tuple(a + b for a, b in zip(psi, phi))
        right, left = Direction.RIGHT, Direction.LEFT
        return {
            "right": equal(
                realize(self.x_monomial(w, psi)) * realize(self.x_monomial(w, phi)),
                realize(self.x_monomial(w, both)) * self.signs.zeta_signs(psi, phi, roots),
            ),
            "left": equal(
                realize(self.x_monomial(w, psi, left)) * realize(self.x_monomial(w, phi, left)),
                realize(self.x_monomial(w, both, left)) * self.signs.zeta_signs(phi, psi, roots),
            ),
            "reverse": equal(
                realize(self.x_monomial(w, psi, right)),
                realize(self.x_monomial(w, psi, left)) * self.signs.zeta_signs(psi, psi, roots),
            ),
            "cross": equal(
                realize(self.x_monomial(w, psi)) * realize(self.x_monomial(w, phi, kind="Y")),
                realize(self.x_monomial(w, phi, kind="Y")) * realize(self.x_monomial(w, psi)),
            ),
        }

    def verify_cross_monomials(self, w: Word, psi: Exponents, u: Word, chi: Exponents) -> bool:
        """X^ψ_w X^χ_u = ζ̂(ψ, χ)_{w,u} X^χ_u X^ψ_w."""
        a = self.realize_monomial(self.x_monomial(w, psi))
        b = self.realize_monomial(self.x_monomial(u, chi))
        sign = self.signs.zeta_hat(
            dict(zip(self.system.inversion_sequence(w), psi)), dict(zip(self.system.inversion_sequence(u), chi))
        )
        return self.algebra.equal(a * b, b * a * sign)

    def verify_kappa_shift(self, w: Word, psi: Exponents, rho: Exponents) -> dict[str, bool]:
        """X^ψ E^ρ = κ⃗ E^{𝔩ψ+ρ} over w▸ and X^ψ E^ρ = κ̄ E^{𝔩ψ+ρ} over ◂w."""
        roots = self.system.inversion_sequence(w)
        pbw = self.pbw
        shifted = tuple(self.signs.ell_bar(b) * k + r for b, k, r in zip(roots, psi, rho))
        report = {}
        for direction, sign in (
            (Direction.RIGHT, self.signs.kappa_arrow(psi, rho, roots)),
            (Direction.LEFT, self.signs.kappa_bar(psi, rho, roots)),
        ):
            lhs = self.realize_monomial(self.x_monomial(w, psi, direction)) * pbw.expand(
                pbw.monomial(w, rho, direction)
            )
            rhs = pbw.expand(pbw.monomial(w, shifted, direction)) * sign
            report[direction.value] = self.algebra.equal(lhs, rhs)
        return report

    # re-expression in 𝒵

    def express_plus(self, x: AlgebraElement, z: Word | None = None) -> ZPolynomial | None:
        """x ∈ U⁺ as a combination of the X^ψ_{z▸}, or None when it is not in 𝒵_z⁺."""
        z = self.pbw.canonical_word() if z is None else tuple(z)
        components: dict[Weight, dict[Term, Scalar]] = {}
        for t, c in x.terms.items():
            e, nu, f = t
            if f or any(nu):
                raise ValueError("express_plus needs an element of U⁺")
            components.setdefault(self.algebra.letters_weight(e), {})[t] = c
        from .uqcore import AlgebraElement

        result: ZPolynomial = {}
        for weight, terms in components.items():
            candidates = self.x_monomials(z, weight)
            solution = self.algebra.oracle.express(
                AlgebraElement(self.algebra, terms), [self.realize_monomial(m) for m in candidates]
            )
            if solution is None:
                return None
            result.update({m: c for m, c in zip(candidates, solution) if c})
        return result

    def express_in_z(self, x: AlgebraElement, z: Word | None = None) -> ZPolynomial:
        """x as a combination of L^μ X^ψ_{z▸} Y^χ_{z▸}; raises when x is outside 𝒵."""
        z = self.pbw.canonical_word() if z is None else tuple(z)
        canonical = self.algebra.oracle.canonical(x)
        scaled = self._scaled_roots(z)
        ell_bars = [self.ctx.ell_bar_d(d) for d in self.algebra.cartan.d]
        candidates: list[ZMonomial] = []
        seen: set[tuple[Weight, Weight, Weight]] = set()
        for e, nu, f in canonical:
            key = (self.algebra.letters_weight(e), nu, self.algebra.letters_weight(f))
            if key in seen:
                continue
            seen.add(key)
            if any(n % lb for n, lb in zip(nu, ell_bars)):
                raise ReductionError(f"K^{nu} is not a product of the L_i")
            mu = tuple(n // lb for n, lb in zip(nu, ell_bars))
            for psi in exponent_vectors(scaled, key[0]):
                for chi in exponent_vectors(scaled, key[2]):
                    candidates.append(
                        monomial((self.L(mu), 1)) + self.x_monomial(z, psi) + self.x_monomial(z, chi, kind="Y")
                    )
        solution = self.algebra.oracle.express(x, [self.realize_monomial(m) for m in candidates])
        if solution is None:
            raise ReductionError("element is not in the span of the primitive power monomials")
        return {m: c for m, c in zip(candidates, solution) if c}

    def artin_on_Z(self, i: int, poly: Mapping[ZMonomial, Scalar], inverse: bool = False) -> ZPolynomial:
        """Γ_i (or Γ_i⁻¹) applied to an element of 𝒵, re-expressed in the generators."""
        if self.algebra.cartan.family == "G":
            raise UnsupportedType("the Artin action on 𝒵 is only asserted away from G₂")
        image = self.algebra.gamma(i, self.realize(poly), inverse)
        return self.express_in_z(image)

    def _rank2(self) -> tuple[int, int, int, int]:
        i, j = rank2_indices(self.algebra)
        e = self.algebra.cartan.d[j - 1]
        return i, j, e, self.algebra.cartan.m(i, j)

    def _check_weights(self, target: PrimitivePower, poly: Mapping[ZMonomial, Scalar]) -> ZPolynomial:
        expected = self.weight(target)
        for m in poly:
            if self.monomial_weight(m) != expected:
                raise ReductionError(f"{format_monomial(m)} does not have the weight {expected} of {target}")
        return dict(poly)

    def reexpress(self, which: Literal["ji", "b"]) -> tuple[PrimitivePower, ZPolynomial]:
        """X_{(ji)} or X_{b_{m−1}} of a rank-2 algebra as a polynomial in the X_{a_s}."""
        i, j, e, m = self._rank2()
        ring, ctx = self.ring, self.ctx
        z = ring.qpow
        lb, lbj = ctx.ell_bar, ctx.ell_bar_d(e)
        dd, nn = ctx.frak_d, ctx.frak_n
        nabla_i, nabla_j = self.nabla(1), self.nabla(e)
        z_ij = tuple(i if k % 2 == 0 else j for k in range(m))
        z_ji = tuple(j if k % 2 == 0 else i for k in range(m))
        Xi, Xj = self.X((i,)), self.X((j,))
        Xij = self.X((i, j))
        poly: ZPolynomial = {}
        if which == "ji":
            target = self.X((j, i))
            sign = ring((-1) ** lb)
            _accumulate(poly, monomial((self.X(z_ij[: m - 1]), 1)), sign * z(e * lb))
            _accumulate(poly, monomial((Xj, dd), (Xi, 1)), sign * z(e * comb(lb, 2)) * nabla_j**dd)
            if dd != 1:
                scale = sign * ring(e) / (z(1) - z(-1)) ** lb
                if e == 2:
                    _accumulate(poly, monomial((Xj, 1), (Xij, 1)), scale * (-z(1)) ** lbj * nabla_j**2)
                else:
                    _accumulate(poly, monomial((Xj, 2), (Xij, 1)), scale / (-z(e)) ** lbj * nabla_j**3)
                    _accumulate(
                        poly, monomial((Xj, 1), (self.X(z_ij[:4]), 1)), scale * z(-e * comb(lbj + 1, 2)) * nabla_j**2
                    )
        elif which == "b":
            target = self.X(z_ji[: m - 1])
            sign = ring((-1) ** (e * lbj))
            _accumulate(poly, monomial((Xij, 1)), sign * z(e * lbj))
            _accumulate(poly, monomial((Xj, 1), (Xi, nn)), sign * z(comb(nn * lb, 2)) * nabla_i**nn)
            if dd == 1 and e != 1:
                scale = sign * ring(e) / qnum(e, 1, ring) ** lb
                Xiji = self.X(z_ij[:3])
                if e == 2:
                    _accumulate(poly, monomial((Xiji, 1), (Xi, 1)), scale * z(lb) * nabla_i)
                else:
                    _accumulate(poly, monomial((Xiji, 1), (Xi, 1)), scale * z(-comb(lb, 2)) * nabla_i)
                    _accumulate(
                        poly, monomial((self.X(z_ij[:5]), 1), (Xi, 2)), scale * z(lb * (lb + 1)) * nabla_i**2
                    )
        else:
            raise ValueError(f"unknown re-expression {which!r}")
        return target, self._check_weights(target, poly)

    def reexpress_solved(self, which: Literal["ji", "b"]) -> tuple[PrimitivePower, ZPolynomial | None]:
        """The same target solved by the oracle in the monomials X^ψ_{z_{|ij|}▸}."""
        i, j, _, m = self._rank2()
        z_ij = tuple(i if k % 2 == 0 else j for k in range(m))
        z_ji = tuple(j if k % 2 == 0 else i for k in range(m))
        target = self.X((j, i)) if which == "ji" else self.X(z_ji[: m - 1])
        return target, self.express_plus(self.element(target), z_ij)

    def verify_reexpression(self, which: Literal["ji", "b"]) -> dict[str, bool]:
        target, closed = self.reexpress(which)
        _, solved = self.reexpress_solved(which)
        value = self.element(target)
        return {
            "closed form": self.algebra.equal(self.realize(closed), value),
            "solvable": solved is not None,
        }

    def word_independent(self, z: Word, other: Word) -> bool:
        """Every X_v with v ≤_R other lies in 𝒵_z⁺."""
        return all(
            self.express_plus(self.element(self.X(other[:k])), z) is not None for k in range(1, len(other) + 1)
        )

    def verify_ideal_recursion(self, a: Word, b: Word) -> dict[str, bool]:
        """X_{a·u} = Γ_a(X_u) for ∅ ≠ u ≤_R b, so 𝒦(a·b) = 𝒦(a) + Γ_a(𝒦(b)) on generators."""
        self.system.inversion_sequence(a + b)
        report = {}
        for k in range(1, len(b) + 1):
            u = b[:k]
            image = self.algebra.gamma_word(a, self.element(self.X(u)))
            report[f"Γ_{a}(X_{u})"] = self.algebra.equal(image, self.element(self.X(a + u)))
        return report

    # ideals

    def _word_coordinates(self, kind: Kind, letters: Word, z: Word) -> dict[Exponents, Scalar]:
        key = (kind, letters, z)
        cached = self._coordinates.get(key)
        if cached is not None:
            return cached
        roots = self.system.inversion_sequence(z)
        if not letters:
            value = {(0,) * len(roots): self.ring.one}
        elif kind == "E":
            coordinates = self.pbw.coordinates(self.algebra.E_word(letters), z, Direction.RIGHT, "E")
            value = {m.psi.exponents(roots): c for m, c in coordinates.items()}
        else:
            coordinates = self.pbw.coordinates(self.algebra.F_word(letters), z, Direction.LEFT, "F")
            value = {m.psi.exponents(roots): c for m, c in coordinates.items()}
        with self._lock:
            value = self._coordinates.setdefault(key, value)
        return value

    def pbw_decomposition(self, x: AlgebraElement, z_e: Word, z_f: Word) -> Decomposition:
        """Coordinates of x in the basis E^φ_{z_e▸} K^ν F^χ_{◂z_f}."""
        from .uqcore import AlgebraElement

        zero = self.algebra.zero_weight
        groups: dict[tuple[Weight, Word], dict[Term, Scalar]] = {}
        for (e, nu, f), c in x.terms.items():
            groups.setdefault((nu, f), {})[(e, zero, ())] = c
        result: Decomposition = {}
        roots = self.system.inversion_sequence(z_e)
        for (nu, f), terms in groups.items():
            left = self.pbw.coordinates(AlgebraElement(self.algebra, terms), z_e, Direction.RIGHT, "E")
            right = self._word_coordinates("F", f, z_f)
            for m, a in left.items():
                phi = m.psi.exponents(roots)
                for chi, b in right.items():
                    _accumulate(result, (phi, nu, chi), a * b)
        return result

    def _exceeds(self, exponents: Exponents, z: Word, n: int) -> bool:
        roots = self.system.inversion_sequence(z)
        return any(exponents[k] >= self.signs.ell_bar(roots[k]) for k in range(n))

    def ideal_member(self, x: AlgebraElement | TensorElement, spec: IdealSpec) -> bool:
        """Membership by PBW exponent thresholds on the anchoring inversion sets."""
        from .uqcore import AlgebraElement

        system = self.system
        match spec.kind:
            case IdealKind.K_PLUS | IdealKind.K_GEQ | IdealKind.K_HAT:
                if not isinstance(x, AlgebraElement):
                    raise TypeError(f"{spec.kind.value} is an ideal of U_ζ, not of a tensor power")
                z_e, z_f = system.maximal_extension(spec.u), system.maximal_extension(spec.v)
                for (phi, nu, chi), _ in self.pbw_decomposition(x, z_e, z_f).items():
                    if spec.kind is not IdealKind.K_HAT and (any(chi) or (spec.kind is IdealKind.K_PLUS and any(nu))):
                        raise ValueError(f"element is outside the domain of {spec.kind.value}")
                    if not (self._exceeds(phi, z_e, len(spec.u)) or self._exceeds(chi, z_f, len(spec.v))):
                        return False
                return True
        if isinstance(x, AlgebraElement):
            raise TypeError(f"{spec.kind.value} is an ideal of a tensor power")
        match spec.kind:
            case IdealKind.N_BULLET:
                z = self.pbw.canonical_word()
                anchors = [(z, len(z), z, len(z))] * spec.legs
            case IdealKind.N_CIRC | IdealKind.N:
                z = system.maximal_extension(spec.u)
                anchors = [(z, len(spec.u), z, 0), (z, 0, z, len(spec.u))]
            case IdealKind.N_STAR:
                z = system.maximal_extension(spec.u)
                anchors = [(z, len(spec.u), z, len(spec.u))] * 2
            case _:
                raise ValueError(f"unknown ideal kind {spec.kind}")
        if x.legs != len(anchors):
            raise ValueError(f"{spec.kind.value} needs {len(anchors)} legs, got {x.legs}")
        return self._tensor_member(x, anchors, spec)

    def _tensor_member(self, x: TensorElement, anchors: list, spec: IdealSpec) -> bool:
        """Collect leg coordinates over all terms, then test every surviving basis tensor."""
        total: dict[tuple, Scalar] = {}
        for key, c in x.terms.items():
            decompositions = [
                self.pbw_decomposition(self.algebra.term(part), z_e, z_f)
                for part, (z_e, _, z_f, _) in zip(key, anchors)
            ]
            for combo in product(*(d.items() for d in decompositions)):
                value = c
                for _, v in combo:
                    value = value * v
                _accumulate(total, tuple(k for k, _ in combo), value)
        for parts in total:
            hits = [
                self._exceeds(phi, z_e, n_e) or self._exceeds(chi, z_f, n_f)
                for (phi, _, chi), (z_e, n_e, z_f, n_f) in zip(parts, anchors)
            ]
            if spec.kind is IdealKind.N_CIRC:
                if not all(hits):
                    return False
            elif not any(hits):
                return False
        return True

    def quotient_dimension(self, w: Word, weight: Weight) -> tuple[int, int]:
        """dim (U⁺/𝒦̂(w)⁺)_μ from the span of the X_v·E_u, and the count of non-exceeding PBW exponents."""
        from .slices import words_of_weight

        algebra = self.algebra
        spanning = []
        for k in range(1, len(w) + 1):
            p = self.X(w[:k])
            rest = tuple(a - b for a, b in zip(weight, self.weight(p)))
            if any(c < 0 for c in rest):
                continue
            for u in words_of_weight(rest):
                spanning.append(self.element(p) * algebra.E_word(u))
        dimension = algebra.oracle.dimension(tuple(weight)) - algebra.oracle.rank(spanning)
        z = self.system.maximal_extension(w)
        roots = self.system.inversion_sequence(z)
        count = sum(1 for ks in exponent_vectors(roots, tuple(weight)) if not self._exceeds(ks, z, len(w)))
        return dimension, count

    def simple_quotient_survivors(self, j_max: int) -> list[bool]:
        """Whether E_{(12)}^j survives modulo the two-sided ideal generated by X_1 and X_2 only."""
        from .slices import words_of_weight

        if self.algebra.cartan.type_label != "A2":
            raise UnsupportedType("the two-generator quotient is checked in A₂")
        algebra = self.algebra
        vector = self.pbw.root_vector((1, 2))
        survivors = []
        for j in range(1, j_max + 1):
            weight = (j, j)
            spanning = []
            for i in (1, 2):
                x = self.element(self.X((i,)))
                rest = tuple(a - b for a, b in zip(weight, self.weight(self.X((i,)))))
                if any(c < 0 for c in rest):
                    continue
                for n in range(sum(rest) + 1):
                    for left in words_of_weight(rest):
                        u, v = left[:n], left[n:]
                        spanning.append(algebra.E_word(u) * x * algebra.E_word(v))
            target = vector**j
            survivors.append(not spanning or algebra.oracle.express(target, spanning) is None)
        return survivors

    # 𝒢-action

    def parity_of(self, m: ZMonomial) -> GElement:
        mu, nu = [0] * self.rank, [0] * self.rank
        for p, k in m:
            a, b = self.signs.parity(p)
            for index in range(self.rank):
                mu[index] = (mu[index] + k * a[index]) % 2
                nu[index] = (nu[index] + k * b[index]) % 2
        return tuple(mu), tuple(nu)

    def parity(self, poly: Mapping[ZMonomial, Scalar]) -> GElement | None:
        """The 𝒢-degree of a homogeneous polynomial, None when it mixes degrees."""
        degrees = {self.parity_of(m) for m in poly}
        return degrees.pop() if len(degrees) == 1 else None

    def g_action(self, g: GElement, poly: Mapping[ZMonomial, Scalar]) -> ZPolynomial:
        result: ZPolynomial = {}
        for m, c in poly.items():
            sign = 1
            for p, k in m:
                if k % 2:
                    sign *= self.signs.act(g, p)
            result[m] = c * sign
        return result

    def verify_g_commutation(self, w: Word) -> dict[str, bool]:
        """W·b = b·(𝔬*(b)▷W) for every generator W of 𝒵_w and every E_k, F_k, K_k."""
        report = {}
        for p in self.generators(w):
            W = self.element(p)
            for label, b in self.algebra.generators():
                moved = self.realize(self.g_action(self.grading(b), {monomial((p, 1)): self.ring.one}))
                report[f"{p}·{label}"] = self.algebra.equal(W * b, b * moved)
        return report

    def _rank(self, polys: Sequence[Mapping[ZMonomial, Scalar]]) -> int:
        keys = sorted({m for p in polys for m in p})
        if not keys:
            return 0
        position = {m: n for n, m in enumerate(keys)}
        dod = {row: {position[m]: c for m, c in p.items()} for row, p in enumerate(polys) if p}
        matrix = DomainMatrix.from_dod(dod, (len(polys), len(keys)), self.ring.dom)
        return len(matrix.rref(method=self.algebra.rref_method)[1])

    def is_g_invariant(self, polys: Sequence[Mapping[ZMonomial, Scalar]]) -> bool:
        """Whether the span of the given polynomials is stable under 𝒢."""
        base = self._rank(polys)
        return all(
            self._rank([*polys, self.g_action(g, p)]) == base for g in self.signs.group() for p in polys
        )

    def respects_grading(self, polys: Sequence[Mapping[ZMonomial, Scalar]]) -> bool:
        """Whether the span contains the 𝒢-homogeneous components of its elements."""
        base = self._rank(polys)
        for p in polys:
            components: dict[GElement, ZPolynomial] = {}
            for m, c in p.items():
                components.setdefault(self.parity_of(m), {})[m] = c
            if len(components) > 1 and any(self._rank([*polys, comp]) != base for comp in components.values()):
                return False
        return True

    # Hopf structure of 𝒵^{≥0}

    def z_coproduct(self, p: PrimitivePower) -> ZTensor:
        """Closed-form Δ of a generator of 𝒵^{≥0} for A_n and B₂ (and of X_i, L^μ in any type)."""
        if p.kind == "Y":
            raise UnsupportedType("closed coproducts are given for 𝒵^{≥0}")
        if p.kind == "L":
            m = monomial((p, 1))
            return {(m, m): self.ring.one}
        if p.hat:
            return self._hat_tensor(p, self.z_coproduct(PrimitivePower("X", p.word)))
        cartan = self.algebra.cartan
        if len(p.word) == 1:
            i = p.word[0]
            return {
                (monomial((p, 1)), monomial((self.L(i), 1))): self.ring.one,
                ((), monomial((p, 1))): self.ring.one,
            }
        if cartan.family == "A":
            return self._type_a_coproduct(p)
        if cartan.type_label in ("B2", "C2"):
            return self._b2_coproduct(p)
        raise UnsupportedType(f"no closed coproduct formulas for {cartan.type_label}")

    def type_a_generator(self, i: int, j: int) -> PrimitivePower:
        """X_{i,j} along the lexicographic maximal word."""
        return self.X(type_a_word(self.rank)[: type_a_position(i, j) + 1])

    def _type_a_coproduct(self, p: PrimitivePower) -> ZTensor:
        i, j = type_a_pair(self.gamma(p))
        if self.type_a_generator(i, j) != p:
            raise NotPrefix(f"{p.word} is not a prefix of {type_a_word(self.rank)}")
        lb = self.ctx.ell_bar
        z = self.ring.qpow
        interior = (z(-1) - z(1)) ** lb * z(comb(lb, 2))

        def cartan(k: int) -> PrimitivePower:
            return self.L(tuple(int(i - 1 <= c < k - 1) for c in range(self.rank)))

        result: ZTensor = {}
        for k in range(i, j + 1):
            left = monomial((self.type_a_generator(i, k), 1)) if k > i else ()
            right = monomial((cartan(k), 1))
            if k < j:
                right += monomial((self.type_a_generator(k, j), 1))
            result[(left, right)] = self.ring.one if k in (i, j) else interior
        return result

    def _b2_names(self) -> dict[str, PrimitivePower]:
        i, j = rank2_indices(self.algebra)
        return {"i": self.X((i,)), "j": self.X((j,)), "iji": self.X((i, j, i)), "ij": self.X((i, j))}

    def _b2_constants(self) -> dict[str, object]:
        i, j = rank2_indices(self.algebra)
        ctx = self.ctx
        return {
            "i": i,
            "j": j,
            "lb": ctx.ell_bar,
            "lbj": ctx.ell_bar_d(2),
            "dd": ctx.frak_d,
            "nn": ctx.frak_n,
            "nabla_i": self.nabla(1),
            "nabla_j": self.nabla(2),
            "two": qnum(2, 1, self.ring),
        }

    def _l(self, **powers: int) -> PrimitivePower:
        i, j = rank2_indices(self.algebra)
        mu = [0] * self.rank
        mu[i - 1], mu[j - 1] = powers.get("i", 0), powers.get("j", 0)
        return self.L(tuple(mu))

    def _b2_coproduct(self, p: PrimitivePower) -> ZTensor:
        names, c = self._b2_names(), self._b2_constants()
        ring = self.ring
        z = ring.qpow
        lb, lbj, dd, nn = c["lb"], c["lbj"], c["dd"], c["nn"]
        nabla_i, nabla_j, two = c["nabla_i"], c["nabla_j"], c["two"]
        Xi, Xj, Xiji, Xij = names["i"], names["j"], names["iji"], names["ij"]
        result: ZTensor = {}
        if p == Xiji:
            result[((), monomial((Xiji, 1)))] = ring.one
            result[(monomial((Xi, 1)), monomial((self._l(i=1), 1), (Xj, dd)))] = -(nabla_j**dd)
            result[(monomial((Xiji, 1)), monomial((self._l(i=1, j=dd), 1)))] = ring.one
            if dd == 2:
                result[(monomial((Xij, 1)), monomial((self._l(i=1, j=1), 1), (Xj, 1)))] = (
                    -ring(2) * two**lb * (-z(1)) ** lbj
                )
        elif p == Xij:
            result[((), monomial((Xij, 1)))] = ring.one
            result[(monomial((Xi, nn)), monomial((self._l(i=nn), 1), (Xj, 1)))] = z(comb(2 * lbj, 2)) * nabla_i**nn
            result[(monomial((Xij, 1)), monomial((self._l(i=nn, j=1), 1)))] = ring.one
            if nn == 2:
                result[(monomial((Xi, 1)), monomial((self._l(i=1), 1), (Xiji, 1)))] = (
                    -ring(2) * z(lb) * nabla_i / two**lb
                )
        else:
            raise NotPrefix(f"{p} is not one of X_i, X_j, X_(iji), X_(ij)")
        expected = self.weight(p)
        for a, b in result:
            total = tuple(x + y for x, y in zip(self.monomial_weight(a), self.monomial_weight(b)))
            if total != expected:
                raise ReductionError(f"coproduct term of weight {total} in Δ({p})")
        return result

    def b2_antipode(self, p: PrimitivePower) -> tuple[ZMonomial, ZPolynomial]:
        """(L, S(p)·L) for p ∈ {X_(ij), X_(iji)} in closed form."""
        names, c = self._b2_names(), self._b2_constants()
        if self.algebra.cartan.type_label not in ("B2", "C2"):
            raise UnsupportedType("closed antipodes are given for B₂")
        ring = self.ring
        z = ring.qpow
        lb, lbj, dd, nn = c["lb"], c["lbj"], c["dd"], c["nn"]
        nabla_i, nabla_j, two = c["nabla_i"], c["nabla_j"], c["two"]
        Xi, Xj, Xiji, Xij = names["i"], names["j"], names["iji"], names["ij"]
        poly: ZPolynomial = {}
        if p == Xij:
            factor = monomial((self._l(i=nn, j=1), 1))
            _accumulate(poly, monomial((Xij, 1)), -ring.one)
            _accumulate(poly, monomial((Xi, nn), (Xj, 1)), -ring((-1) ** nn) * z(comb(2 * lbj, 2)) * nabla_i**nn)
            if nn == 2:
                _accumulate(poly, monomial((Xi, 1), (Xiji, 1)), -ring(2) * z(lb) * nabla_i / two**lb)
        elif p == Xiji:
            factor = monomial((self._l(i=1, j=dd), 1))
            _accumulate(poly, monomial((Xiji, 1)), -ring.one)
            _accumulate(poly, monomial((Xi, 1), (Xj, dd)), ring((-1) ** dd) * nabla_j**dd)
            if dd == 2:
                _accumulate(poly, monomial((Xij, 1), (Xj, 1)), -ring(2) * two**lb * (-z(1)) ** lbj)
        else:
            raise NotPrefix(f"{p} is not X_(ij) or X_(iji)")
        return factor, poly

    def verify_antipode(self, p: PrimitivePower) -> bool:
        factor, poly = self.b2_antipode(p)
        lhs = self.algebra.antipode(self.element(p)) * self.realize_monomial(factor)
        return self.algebra.equal(lhs, self.realize(poly))

    def z_antipode(self, p: PrimitivePower) -> ZPolynomial:
        """S(p) re-expressed in 𝒵."""
        return self.express_in_z(self.algebra.antipode(self.element(p)))

    def _hat_tensor(self, p: PrimitivePower, t: ZTensor) -> ZTensor:
        """Rewrite Δ(X_α) as Δ(X̂_α) in the X̂ generators."""

        def rescale(m: ZMonomial) -> tuple[ZMonomial, Scalar]:
            factor = self.ring.one
            out = []
            for q, k in m:
                if q.kind == "X":
                    factor *= self.hat_factor(self.gamma(q)) ** k
                    q = PrimitivePower("X", q.word, hat=True)
                out.append((q, k))
            return tuple(out), factor

        top = self.hat_factor(self.gamma(p))
        result: ZTensor = {}
        for (a, b), c in t.items():
            a2, fa = rescale(a)
            b2, fb = rescale(b)
            result[(a2, b2)] = c * top / (fa * fb)
        return result

    def hat_integral(self, t: Mapping[tuple[ZMonomial, ZMonomial], Scalar]) -> bool:
        """All coefficients lie in ℤ[√−1]."""
        return all(is_gaussian_integer(c, self.ctx.ring) for c in t.values())

    def verify_coproduct(self, p: PrimitivePower) -> bool:
        """The closed form equals Δ(E_w)^{ℓ̄_w} computed in U_ζ⊗U_ζ."""
        closed = self.realize_tensor(self.z_coproduct(p))
        return self.algebra.tensor_equal(closed, self.algebra.coproduct(self.element(p)))
