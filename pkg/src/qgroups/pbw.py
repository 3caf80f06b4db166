"""Root vectors E_w, PBW monomials and bases of U_q^±.

A root vector is attached to a non-empty reduced word ``w`` as
``E_w = Γ_{w♭}(E_{τ(w)})`` and is stored already projected into U⁺ (or U⁻ for
F). A maximal word ``z`` orders Φ⁺ convexly; PBW monomials take one power of
``E_{z[1,k]}`` per position ``k``, multiplied left to right (▸) or right to
left (◂).
"""

from __future__ import annotations

import enum
import logging
import threading
from dataclasses import dataclass, field
from math import comb
from typing import TYPE_CHECKING, Annotated, Callable, Iterator, Literal, Mapping, Sequence

from typing_extensions import Doc

from .coxeter import WeylElement
from .errors import NotReduced, ReductionError, SingularNormalization, UnsupportedType
from .qring import Scalar, qbinom, qfact, qmultinom
from .types import Exponents, Weight, Word

if TYPE_CHECKING:
    from .uqcore import AlgebraElement, QuantumAlgebra, TensorElement

logger = logging.getLogger(__name__)

Kind = Literal["E", "F"]

MAX_REWRITES = 200_000

Positions = tuple[int, ...]
"""A product of root vectors given by their 0-based positions in a convex order."""

Rule = Callable[[int, int], Mapping[Positions, Scalar]]

B2Relation = Literal["gamma_delta", "one_tau", "one_nu"]


class Direction(enum.Enum):
    """Multiplication order of the factors of a PBW monomial."""

    RIGHT = "▸"
    LEFT = "◂"


class Normalization(enum.Enum):
    PLAIN = "plain"
    DIVIDED = "divided"
    SINGULAR = "singular"
    HAT = "hat"


@dataclass(frozen=True, slots=True)
class ExponentFunction:
    """ψ: positive roots → ℕ₀, finitely supported.

    ``anchor`` records the Weyl element s with supp ψ ⊆ 𝒩(s) when known.
    """

    rank: int
    values: tuple[tuple[Weight, int], ...] = ()
    anchor: WeylElement | None = field(default=None, compare=False)

    @classmethod
    def of(cls, rank: int, values: Mapping[Weight, int], anchor: WeylElement | None = None) -> ExponentFunction:
        if any(k < 0 for k in values.values()):
            raise ValueError("exponents must be nonnegative")
        return cls(rank, tuple(sorted((tuple(r), k) for r, k in values.items() if k)), anchor)

    @classmethod
    def along(cls, roots: Sequence[Weight], exponents: Sequence[int]) -> ExponentFunction:
        """ψ(β_k) = exponents[k] for a root sequence β."""
        if len(roots) != len(exponents):
            raise ValueError("one exponent per root is required")
        if not roots:
            raise ValueError("cannot infer the rank from an empty root sequence")
        return cls.of(len(roots[0]), dict(zip(roots, exponents)))

    def __getitem__(self, root: Weight) -> int:
        for r, k in self.values:
            if r == root:
                return k
        return 0

    @property
    def support(self) -> tuple[Weight, ...]:
        return tuple(r for r, _ in self.values)

    @property
    def vector(self) -> Weight:
        """ψ⃗ = Σ ψ(α) α."""
        total = [0] * self.rank
        for root, k in self.values:
            for index, c in enumerate(root):
                total[index] += k * c
        return tuple(total)

    @property
    def n(self) -> int:
        return sum(k for _, k in self.values)

    def d(self, d_of: Callable[[Weight], int]) -> int:
        """d(ψ) = Σ ψ(α) d_α."""
        return sum(k * d_of(root) for root, k in self.values)

    def exponents(self, roots: Sequence[Weight]) -> Exponents:
        missing = set(self.support) - set(roots)
        if missing:
            raise ValueError(f"exponent function is supported outside the given roots: {sorted(missing)}")
        return tuple(self[root] for root in roots)

    def __add__(self, other: ExponentFunction) -> ExponentFunction:
        values = dict(self.values)
        for root, k in other.values:
            values[root] = values.get(root, 0) + k
        return ExponentFunction.of(self.rank, values)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{root}: {k}" for root, k in self.values) + "}"


@dataclass(frozen=True, slots=True)
class PBWMonomial:
    word: Word
    psi: ExponentFunction
    direction: Direction = Direction.RIGHT
    kind: Kind = "E"
    normalization: Normalization = Normalization.PLAIN

    def with_word(self, word: Word, direction: Direction | None = None) -> PBWMonomial:
        return PBWMonomial(word, self.psi, direction or self.direction, self.kind, self.normalization)

    def as_report(self) -> dict[str, int]:
        """``{root: exponent}`` with roots written as coefficient strings."""
        return {"".join(map(str, root)): k for root, k in self.psi.values}


def exponent_vectors(roots: Sequence[Weight], weight: Weight) -> Iterator[Exponents]:
    """Every k with Σ k_s β_s = weight."""
    if not roots:
        if not any(weight):
            yield ()
        return
    first, rest = roots[0], roots[1:]
    remaining = tuple(weight)
    k = 0
    while all(c >= 0 for c in remaining):
        for tail in exponent_vectors(rest, remaining):
            yield (k, *tail)
        remaining = tuple(c - r for c, r in zip(remaining, first))
        k += 1


def type_a_word(n: int) -> Word:
    """z_n = z_{n−1}·(w_n ⋯ w_1), whose convex order is lexicographic in the ε_i − ε_j."""
    word: list[int] = []
    for m in range(1, n + 1):
        word.extend(range(m, 0, -1))
    return tuple(word)


def type_a_position(i: int, j: int) -> int:
    """0-based position of ε_i − ε_j in the order of :func:`type_a_word`."""
    if not 1 <= i < j:
        raise ValueError(f"need 1 ≤ i < j, got ({i}, {j})")
    return comb(j - 1, 2) + i - 1


def type_a_pair(root: Weight) -> tuple[int, int]:
    support = [k for k, c in enumerate(root) if c]
    return support[0] + 1, support[-1] + 2


class PBW:
    """Root vectors, PBW monomials and straightening for one :class:`QuantumAlgebra`."""

    def __init__(self, algebra: QuantumAlgebra) -> None:
        self.algebra = algebra
        self.system = algebra.system
        self.ring = algebra.ring
        self._vectors: dict[tuple[Kind, Word], AlgebraElement] = {}
        self._monomials: dict[PBWMonomial, AlgebraElement] = {}
        self._rules: dict[tuple[Word, int, int], dict[Positions, Scalar]] = {}
        self._lock = threading.Lock()

    # root vectors

    def root_vector(
        self,
        word: Annotated[Word, Doc("non-empty reduced word")],
        kind: Kind = "E",
    ) -> AlgebraElement:
        """E_w (or F_w), computed as Γ_{w₁}(E_{w₂⋯w_k}) and projected into U⁺ (or U⁻)."""
        word = tuple(word)
        if not word:
            raise NotReduced("root vectors need a non-empty word")
        key = (kind, word)
        cached = self._vectors.get(key)
        if cached is not None:
            return cached
        self.system.gamma(word)
        if len(word) == 1:
            value = self.algebra.E(word[0]) if kind == "E" else self.algebra.F(word[0])
        else:
            inner = self.root_vector(word[1:], kind)
            value = self._project(self.algebra.gamma(word[0], inner), kind, word)
        with self._lock:
            value = self._vectors.setdefault(key, value)
        return value

    def e_w(self, word: Word) -> AlgebraElement:
        return self.root_vector(word, "E")

    def f_w(self, word: Word) -> AlgebraElement:
        return self.root_vector(word, "F")

    def _project(self, x: AlgebraElement, kind: Kind, word: Word) -> AlgebraElement:
        from .uqcore import AlgebraElement

        canonical = self.algebra.oracle.canonical(x)
        for e, nu, f in canonical:
            stray = f if kind == "E" else e
            if stray or any(nu):
                raise ReductionError(f"Γ-image for the word {word} is not in U{'⁺' if kind == 'E' else '⁻'}")
        return AlgebraElement(self.algebra, canonical)

    def divided_power(self, word: Word, k: int, kind: Kind = "E") -> AlgebraElement:
        """E_w^{(k)} = E_w^k / [k]_β!."""
        d = self.system.d_of(self.system.gamma(word))
        return self.root_vector(word, kind) ** k * (self.ring.one / self._factorial(k, d))

    def simple_divided(self, i: int, k: int, kind: Kind = "E") -> AlgebraElement:
        power = self.algebra.E(i, k) if kind == "E" else self.algebra.F(i, k)
        return power * (self.ring.one / self._factorial(k, self.algebra.cartan.d[i - 1]))

    def _factorial(self, k: int, d: int) -> Scalar:
        value = qfact(k, d, self.ring)
        if not value:
            raise SingularNormalization(f"[{k}]!_{d} vanishes at ζ of order {self.algebra.ell}")
        return value

    # normalizations

    def psi_factorial(self, psi: ExponentFunction) -> Scalar:
        """[ψ]! = Π [ψ(α)]!_{d_α}."""
        value = self.ring.one
        for root, k in psi.values:
            value *= qfact(k, self.system.d_of(root), self.ring)
        return value

    def delta(self, psi: ExponentFunction) -> Scalar:
        """δ^ψ = Π (q_α⁻¹ − q_α)^{ψ(α)}."""
        value = self.ring.one
        for root, k in psi.values:
            d = self.system.d_of(root)
            value *= (self.ring.qpow(-d) - self.ring.qpow(d)) ** k
        return value

    def normalization_factor(self, psi: ExponentFunction, normalization: Normalization) -> Scalar:
        match normalization:
            case Normalization.PLAIN:
                return self.ring.one
            case Normalization.DIVIDED:
                factorial = self.psi_factorial(psi)
                if not factorial:
                    raise SingularNormalization(f"[ψ]! vanishes at ζ of order {self.algebra.ell} for ψ = {psi}")
                return self.ring.one / factorial
            case Normalization.SINGULAR:
                return self.delta(psi)
            case Normalization.HAT:
                twist = sum(self.system.d_of(root) * comb(k, 2) for root, k in psi.values)
                return self.delta(psi) * self.ring.qpow(twist)
        raise ValueError(f"unknown normalization {normalization!r}")

    # monomials and bases

    def monomial(
        self,
        word: Word,
        psi: ExponentFunction | Exponents,
        direction: Direction = Direction.RIGHT,
        kind: Kind = "E",
        normalization: Normalization = Normalization.PLAIN,
    ) -> PBWMonomial:
        if not isinstance(psi, ExponentFunction):
            psi = ExponentFunction.along(self.system.inversion_sequence(word), psi)
        return PBWMonomial(tuple(word), psi, direction, kind, normalization)

    def expand(self, m: PBWMonomial) -> AlgebraElement:
        """The monomial as an element of U_q."""
        cached = self._monomials.get(m)
        if cached is not None:
            return cached
        roots = self.system.inversion_sequence(m.word)
        exponents = m.psi.exponents(roots)
        positions = list(range(len(roots)))
        if m.direction is Direction.LEFT:
            positions.reverse()
        value = self.algebra.one
        for p in positions:
            if exponents[p]:
                value = value * self.root_vector(m.word[: p + 1], m.kind) ** exponents[p]
        value = value * self.normalization_factor(m.psi, m.normalization)
        with self._lock:
            value = self._monomials.setdefault(m, value)
        return value

    def canonical_word(self) -> Word:
        """The maximal word used for straightening and reports."""
        cartan = self.algebra.cartan
        if cartan.family == "A":
            return type_a_word(cartan.rank)
        if cartan.rank == 2:
            i, j = rank2_indices(self.algebra)
            return tuple(i if k % 2 == 0 else j for k in range(cartan.m(i, j)))
        return self.system.box_maximal_word()

    def straightening_word(self) -> Word:
        """The word whose commutation rules are closed forms: z_{|ji|} for B₂, the canonical word otherwise."""
        if self.algebra.cartan.type_label in ("B2", "C2"):
            return Rank2(self).z_ji
        return self.canonical_word()

    def basis(
        self,
        z: Word,
        weight: Weight,
        direction: Direction = Direction.RIGHT,
        kind: Kind = "E",
        normalization: Normalization = Normalization.PLAIN,
    ) -> list[PBWMonomial]:
        """Monomials E^ψ with ψ⃗ = weight, over the convex order of z."""
        roots = self.system.inversion_sequence(z)
        return [
            PBWMonomial(tuple(z), ExponentFunction.along(roots, ks), direction, kind, normalization)
            for ks in exponent_vectors(roots, tuple(weight))
        ]

    def coordinates(
        self,
        x: AlgebraElement,
        z: Word | None = None,
        direction: Direction = Direction.RIGHT,
        kind: Kind = "E",
    ) -> dict[PBWMonomial, Scalar]:
        """Coordinates of x ∈ U⁺ (or U⁻) in the PBW basis of z, solved slice by slice with the oracle."""
        z = self.canonical_word() if z is None else tuple(z)
        components: dict[Weight, dict] = {}
        for t, c in x.terms.items():
            e, nu, f = t
            letters, stray = (e, f) if kind == "E" else (f, e)
            if stray or any(nu):
                raise ValueError(f"coordinates are computed for elements of U{'⁺' if kind == 'E' else '⁻'}")
            components.setdefault(self.algebra.letters_weight(letters), {})[t] = c
        from .uqcore import AlgebraElement

        result: dict[PBWMonomial, Scalar] = {}
        for weight, terms in sorted(components.items()):
            monomials = self.basis(z, weight, direction, kind)
            solution = self.algebra.oracle.express(
                AlgebraElement(self.algebra, terms), [self.expand(m) for m in monomials]
            )
            if solution is None:
                raise ReductionError(f"PBW monomials of {z} do not span the slice {weight}")
            result.update({m: c for m, c in zip(monomials, solution) if c})
        return result

    # straightening

    def straighten(self, x: AlgebraElement, z: Word | None = None) -> dict[PBWMonomial, Scalar]:
        """PBW coordinates of x ∈ U⁺ by rewriting adjacent inverted pairs of root vectors."""
        cartan = self.algebra.cartan
        z = self.canonical_word() if z is None else tuple(z)
        roots = self.system.convex_order(z)
        rule: Rule
        if cartan.family == "A" and z == type_a_word(cartan.rank):
            rule = self._type_a_rule(roots)
        elif cartan.type_label in ("B2", "C2") and z == Rank2(self).z_ji:
            rule = Rank2(self).b2_rule()
        elif cartan.family == "A" or cartan.type_label in ("B2", "C2"):
            rule = self._derived_rule(z, roots)
        else:
            raise UnsupportedType(f"no straightening rules for {cartan.type_label}; use coordinates()")
        position = {root: p for p, root in enumerate(roots)}
        start: dict[Positions, Scalar] = {}
        for (e, nu, f), c in x.terms.items():
            if f or any(nu):
                raise ValueError("straightening applies to elements of U⁺")
            key = tuple(position[self.system.simple(letter)] for letter in e)
            start[key] = start.get(key, self.ring.zero) + c
        ordered = self._rewrite(start, rule)
        result: dict[PBWMonomial, Scalar] = {}
        for key, c in ordered.items():
            ks = [0] * len(roots)
            for p in key:
                ks[p] += 1
            result[PBWMonomial(z, ExponentFunction.along(roots, ks))] = c
        return result

    def _rewrite(self, words: Mapping[Positions, Scalar], rule: Rule) -> dict[Positions, Scalar]:
        zero = self.ring.zero
        pending = dict(words)
        done: dict[Positions, Scalar] = {}
        steps = 0
        while pending:
            w, c = pending.popitem()
            if not c:
                continue
            k = next((k for k in range(len(w) - 1) if w[k] > w[k + 1]), None)
            if k is None:
                done[w] = done.get(w, zero) + c
                continue
            steps += 1
            if steps > MAX_REWRITES:
                raise ReductionError(f"straightening did not terminate within {MAX_REWRITES} rewrites")
            for replacement, v in rule(w[k], w[k + 1]).items():
                new = w[:k] + replacement + w[k + 2 :]
                pending[new] = pending.get(new, zero) + c * v
        logger.debug("straightened %d words in %d rewrites", len(words), steps)
        return {w: c for w, c in done.items() if c}

    def _type_a_rule(self, roots: Sequence[Weight]) -> Rule:
        ring = self.ring
        q, qinv = ring.qpow(1), ring.qpow(-1)
        pairs = [type_a_pair(root) for root in roots]
        position = {pair: p for p, pair in enumerate(pairs)}

        def rule(a: int, b: int) -> dict[Positions, Scalar]:
            # E_X E_Y with Y before X in the order
            (x1, x2), (y1, y2) = pairs[a], pairs[b]
            swapped = (b, a)
            if x2 == y2 or x1 == y1:
                return {swapped: q}
            if y2 == x1:
                return {swapped: qinv, (position[(y1, x2)],): -ring.one}
            if y2 < x1 or x1 < y1:
                return {swapped: ring.one}
            return {swapped: ring.one, (position[(x1, y2)], position[(y1, x2)]): q - qinv}

        return rule

    def _derived_rule(self, z: Word, roots: Sequence[Weight]) -> Rule:
        def rule(a: int, b: int) -> dict[Positions, Scalar]:
            key = (z, a, b)
            if key not in self._rules:
                target = self.root_vector(z[: a + 1]) * self.root_vector(z[: b + 1])
                weight = tuple(x + y for x, y in zip(roots[a], roots[b]))
                monomials = self.basis(z, weight)
                solution = self.algebra.oracle.express(target, [self.expand(m) for m in monomials])
                if solution is None:
                    raise ReductionError(f"no commutation rule for positions {a}, {b} of {z}")
                rewritten: dict[Positions, Scalar] = {}
                for m, c in zip(monomials, solution):
                    if c:
                        ks = m.psi.exponents(roots)
                        rewritten[tuple(p for p, k in enumerate(ks) for _ in range(k))] = c
                logger.debug("derived commutation rule for positions %d, %d of %s: %d terms", a, b, z, len(rewritten))
                self._rules[key] = rewritten
            return self._rules[key]

        return rule

    # involution images predicted on monomials

    def _rho_pair(self, vector: Weight) -> int:
        return sum(c * d for c, d in zip(vector, self.algebra.cartan.d))

    def upsilon_image(self, m: PBWMonomial) -> tuple[Scalar, PBWMonomial]:
        """Υ(E^ψ_{w▸}) = (−1)^{ht ψ⃗ − n(ψ)} q^{±((ρ|ψ⃗) − d(ψ))} E^ψ_{◂w}, and the reverse."""
        vector = m.psi.vector
        sign = (-1) ** ((sum(vector) - m.psi.n) % 2)
        exponent = self._rho_pair(vector) - m.psi.d(self.system.d_of)
        if m.kind == "F":
            exponent = -exponent
        flipped = Direction.LEFT if m.direction is Direction.RIGHT else Direction.RIGHT
        return self.ring(sign) * self.ring.qpow(exponent), m.with_word(m.word, flipped)

    def u_image(self, m: PBWMonomial) -> PBWMonomial:
        """𝔘(E^ψ_{z▸}) = E^ψ_{z†▸} for a maximal word z; likewise for ◂."""
        if not self.system.is_maximal(m.word):
            raise NotReduced(f"{m.word} is not a reduced word of maximal length")
        return m.with_word(self.system.dagger(m.word))

    def pi_image(self, m: PBWMonomial) -> tuple[Scalar, PBWMonomial]:
        """Π = Υ∘𝔘 on a maximal monomial."""
        return self.upsilon_image(self.u_image(m))

    def antipode_image(self, m: PBWMonomial) -> AlgebraElement:
        """S(E^ψ_{z▸}) = (−1)^{ht ψ⃗} q^{−½((ψ⃗|ψ⃗) − 2(ρ|ψ⃗))} E^ψ_{z†▸} K^{−ψ⃗}, and the F analog."""
        if m.normalization is not Normalization.PLAIN:
            raise ValueError("antipode images are tabulated for plain monomials")
        vector = m.psi.vector
        norm = self.algebra.pair(vector, vector)
        rho = self._rho_pair(vector)
        sign = self.ring((-1) ** (sum(vector) % 2))
        image = self.expand(self.u_image(m))
        if m.kind == "E":
            return image * self.algebra.K(tuple(-c for c in vector)) * (sign * self.ring.qpow(-(norm - 2 * rho) // 2))
        return image * self.algebra.K(vector) * (sign * self.ring.qpow(-(norm + 2 * rho) // 2))

    # type A coproducts

    def type_a_vector(self, i: int, j: int) -> AlgebraElement:
        """E_{i,j}, with E_{i,i} = 1."""
        self._require_a()
        if i == j:
            return self.algebra.one
        return self.root_vector(type_a_word(self.algebra.rank)[: type_a_position(i, j) + 1])

    def type_a_recursive(self, i: int, j: int) -> AlgebraElement:
        """E_{i,j} = q⁻¹E_iE_{i+1,j} − E_{i+1,j}E_i, from E_{j−1,j} = E_{j−1}."""
        self._require_a()
        if j == i + 1:
            return self.algebra.E(i)
        inner = self.type_a_recursive(i + 1, j)
        E = self.algebra.E(i)
        return E * inner * self.ring.qpow(-1) - inner * E

    def type_a_cartan(self, i: int, k: int) -> AlgebraElement:
        """K_{i,k} = K_i ⋯ K_{k−1}."""
        return self.algebra.K(tuple(int(i - 1 <= c < k - 1) for c in range(self.algebra.rank)))

    def type_a_tensor_terms(self, i: int, j: int) -> list[TensorElement]:
        """T_k = E_{i,k} ⊗ K_{i,k}E_{k,j} for i ≤ k ≤ j."""
        return [
            self.algebra.tensor(self.type_a_vector(i, k), self.type_a_cartan(i, k) * self.type_a_vector(k, j))
            for k in range(i, j + 1)
        ]

    def type_a_coproduct(self, i: int, j: int, power: int = 1) -> TensorElement:
        """Δ(E_{i,j}^N) = Σ q^{Σ_{s<t} r_s r_t} (q⁻¹ − q)^{Σ_{interior} r_s} [N; r] T_i^{r_i} ⋯ T_j^{r_j}."""
        if not 1 <= i < j <= self.algebra.rank + 1:
            raise ValueError(f"need 1 ≤ i < j ≤ {self.algebra.rank + 1}")
        ring = self.ring
        terms = self.type_a_tensor_terms(i, j)
        unit = self.algebra.tensor(self.algebra.one, self.algebra.one)
        total = unit * ring.zero
        for r in _compositions(power, len(terms)):
            cross = sum(r[s] * r[t] for s in range(len(r)) for t in range(s + 1, len(r)))
            interior = sum(r[1:-1])
            c = ring.qpow(cross) * (ring.qpow(-1) - ring.qpow(1)) ** interior * qmultinom(r, 1, ring)
            value = unit
            for t, k in zip(terms, r):
                for _ in range(k):
                    value = value * t
            total = total + value * c
        return total

    def _require_a(self) -> None:
        if self.algebra.cartan.family != "A":
            raise UnsupportedType(f"E_{{i,j}} generators are defined for type A, not {self.algebra.cartan.type_label}")


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def rank2_indices(algebra: QuantumAlgebra) -> tuple[int, int]:
    """(i, j) with α_i short."""
    if algebra.rank != 2:
        raise UnsupportedType(f"{algebra.cartan.type_label} is not of rank 2")
    d = algebra.cartan.d
    return (1, 2) if d[0] <= d[1] else (2, 1)


class Rank2:
    """Commutation library of a rank-2 algebra in the order of z_{|ij|}, α_i short, 𝐞 = d_j."""

    def __init__(self, pbw: PBW) -> None:
        self.pbw = pbw
        self.algebra = pbw.algebra
        self.ring = pbw.ring
        self.i, self.j = rank2_indices(self.algebra)
        self.e = self.algebra.cartan.d[self.j - 1]
        self.m = self.algebra.cartan.m(self.i, self.j)
        self.z_ij: Word = tuple(self.i if k % 2 == 0 else self.j for k in range(self.m))
        self.z_ji: Word = tuple(self.j if k % 2 == 0 else self.i for k in range(self.m))
        self.roots = self.algebra.system.convex_order(self.z_ij)

    def a(self, r: int) -> Word:
        return self.z_ij[:r]

    def b(self, r: int) -> Word:
        return self.z_ji[:r]

    def psi(self, ks: Exponents) -> ExponentFunction:
        return ExponentFunction.along(self.roots, ks)

    def vector(self, ks: Exponents) -> tuple[int, int]:
        """(M, N) with ψ⃗ = Mα_i + Nα_j."""
        v = self.psi(ks).vector
        return v[self.i - 1], v[self.j - 1]

    def f(self, ks: Exponents) -> int:
        """The quadratic exponent f_𝐞(ψ)."""
        match self.e, ks:
            case 1, (k1, k2, k3):
                return k1 * k3 + k2
            case 2, (k1, k2, k3, k4):
                return 2 * k4 * (k1 + k2) + k3 * k1 + 2 * k2 + 2 * k3
            case 3, (k1, k2, k3, k4, k5, k6):
                return (
                    3 * k6 * (k1 + 2 * k2 + k3 + k4)
                    + k5 * (2 * k1 + 3 * k2 + k3)
                    + 3 * k4 * (k1 + k2)
                    + k3 * k1
                    + 3 * k2
                    + 4 * k3
                    + 6 * k4
                    + 3 * k5
                )
        raise ValueError(f"{ks} does not match 𝐞 = {self.e}")

    def u_j(self, M: int, N: int) -> int:
        return M - N

    def u_i(self, M: int, N: int) -> int:
        return self.e * N - M

    def exponent_set(self, M: int, N: int) -> list[Exponents]:
        """S_𝐞(Mα_i + Nα_j)."""
        weight = [0, 0]
        weight[self.i - 1], weight[self.j - 1] = M, N
        return list(exponent_vectors(self.roots, tuple(weight)))

    def bracket(self, ks: Exponents) -> Scalar:
        """⟦ψ⟧_𝐞, the factor turning the divided-power expansion into one of ordinary powers."""
        ring = self.ring
        e = self.e

        def fact(a: int, d: int = 1) -> Scalar:
            return qfact(a, d, ring)

        match e, ks:
            case 1, (k1, k2, k3):
                return fact(k2) * qbinom(k1 + k2, k2, 1, ring) * qbinom(k2 + k3, k2, 1, ring)
            case 2, (k1, k2, k3, k4):
                return (
                    fact(2 * k2)
                    * fact(k3, e)
                    * qmultinom((k1, 2 * k2, k3), 1, ring)
                    * qmultinom((k2, k3, k4), e, ring)
                )
            case 3, (k1, k2, k3, k4, k5, k6):
                return (
                    fact(3 * k2)
                    * fact(k3)
                    * fact(k3, e)
                    * fact(3 * k4)
                    * fact(k4, e)
                    * fact(k5, e)
                    * qbinom(2 * k3, k3, 1, ring)
                    * qbinom(2 * k4, k4, e, ring)
                    * qmultinom((k1, 3 * k2, 2 * k3, 3 * k4, k5), 1, ring)
                    * qmultinom((k2, k3, 2 * k4, k5, k6), e, ring)
                )
        raise ValueError(f"{ks} does not match 𝐞 = {e}")

    def expand(self, M: int, N: int, *, ordinary: bool = False) -> dict[Exponents, Scalar]:
        """E_i^{(M)}E_j^{(N)} = Σ_ψ q^{f_𝐞(ψ)} E^{(ψ)}_{◂z_{|ij|}}; with ``ordinary`` the E_i^M E_j^N form."""
        result = {}
        for ks in self.exponent_set(M, N):
            c = self.ring.qpow(self.f(ks))
            result[ks] = c * self.bracket(ks) if ordinary else c
        return result

    def lhs(self, M: int, N: int, *, ordinary: bool = False) -> AlgebraElement:
        if ordinary:
            return self.algebra.E(self.i, M) * self.algebra.E(self.j, N)
        return self.pbw.simple_divided(self.i, M) * self.pbw.simple_divided(self.j, N)

    def element(self, coefficients: Mapping[Exponents, Scalar], *, divided: bool = True) -> AlgebraElement:
        """Σ c_ψ E^{(ψ)}_{◂z_{|ij|}} (or plain powers)."""
        normalization = Normalization.DIVIDED if divided else Normalization.PLAIN
        total = self.algebra.zero
        for ks, c in coefficients.items():
            m = PBWMonomial(self.z_ij, self.psi(ks), Direction.LEFT, "E", normalization)
            total = total + self.pbw.expand(m) * c
        return total

    def resum(self, M: int, N: int, side: Literal["i", "j"], z: Scalar) -> dict[Exponents, Scalar]:
        """Right-hand coefficients q^{f(φ)} Π_{t ≤ φ(α)} (q_α^{−2t} z + 1) of the resummation identities."""
        position = 0 if side == "i" else len(self.roots) - 1
        d = self.algebra.cartan.d[(self.j if side == "j" else self.i) - 1]
        result = {}
        for ks in self.exponent_set(M, N):
            c = self.ring.qpow(self.f(ks))
            for t in range(1, ks[position] + 1):
                c *= self.ring.qpow(-2 * t * d) * z + self.ring.one
            result[ks] = c
        return result

    def resum_lhs(self, M: int, N: int, side: Literal["i", "j"], z: Scalar) -> AlgebraElement:
        """Σ_k z^k q_j^{k(u_j−1)} E_j^{(k)}E_i^{(M)}E_j^{(N−k)}, or the analogous sum in E_i."""
        pbw, ring = self.pbw, self.ring
        total = self.algebra.zero
        if side == "j":
            for k in range(N + 1):
                c = z**k * ring.qpow(self.e * k * (self.u_j(M, N) - 1))
                term = pbw.simple_divided(self.j, k) * pbw.simple_divided(self.i, M) * pbw.simple_divided(self.j, N - k)
                total = total + term * c
        else:
            for k in range(M + 1):
                c = z**k * ring.qpow(k * (self.u_i(M, N) - 1))
                term = pbw.simple_divided(self.i, M - k) * pbw.simple_divided(self.j, N) * pbw.simple_divided(self.i, k)
                total = total + term * c
        return total

    def divided_expansion(self, N: int, which: Literal["a", "ji", "ij", "b"]) -> tuple[AlgebraElement, AlgebraElement]:
        """Divided powers of the rank-2 root vectors next to the simple ones, as sums over simple divided powers.

        ``a``: E_{a_{m−1}}^{(N)}; ``ji``: E_{(ji)}^{(N)}; ``ij``: E_{(ij)}^{(N)}; ``b``: E_{b_{m−1}}^{(N)}.
        """
        pbw, ring, e = self.pbw, self.ring, self.e
        i, j = self.i, self.j
        total = self.algebra.zero
        match which:
            case "a" | "ji":
                word = self.a(self.m - 1) if which == "a" else (j, i)
                for k in range(N + 1):
                    if which == "a":
                        c = ring((-1) ** (N - k)) * ring.qpow(-e * k)
                    else:
                        c = ring((-1) ** k) * ring.qpow(-e * (N - k))
                    term = pbw.simple_divided(j, N - k) * pbw.simple_divided(i, N) * pbw.simple_divided(j, k)
                    total = total + term * c
            case "ij" | "b":
                word = (i, j) if which == "ij" else self.b(self.m - 1)
                for k in range(e * N + 1):
                    if which == "ij":
                        c = ring((-1) ** (e * N - k)) * ring.qpow(-k)
                    else:
                        c = ring((-1) ** k) * ring.qpow(-(e * N - k))
                    term = pbw.simple_divided(i, k) * pbw.simple_divided(j, N) * pbw.simple_divided(i, e * N - k)
                    total = total + term * c
            case _:
                raise ValueError(f"unknown identity {which!r}")
        return pbw.divided_power(word, N), total

    def dictionary(self, label: str | Sequence[int]) -> Word:
        """Our word for Lusztig's Ě labelled by a string of i's and j's, e.g. ``"iij"``."""
        if isinstance(label, str):
            letters = [self.i if ch == "i" else self.j if ch == "j" else None for ch in label]
            if None in letters or not letters:
                raise ValueError(f"labels are words in 'i' and 'j', got {label!r}")
        else:
            letters = list(label)
        root = [0, 0]
        for letter in letters:
            root[letter - 1] += 1
        system = self.algebra.system
        for r in range(1, self.m + 1):
            if system.gamma(self.b(r)) == tuple(root):
                return self.a(self.m + 1 - r)
        raise ValueError(f"{label!r} does not label a positive root")

    def u_expansion(self, ks: Exponents) -> dict[Exponents, Scalar]:
        """Coefficients 𝔳 of 𝔘(E^φ_{z_{|ij|}▸}) in the basis E^{φ′}_{z_{|ij|}▸}."""
        pbw = self.pbw
        psi = self.psi(ks)
        image = self.algebra.involution("u", pbw.expand(PBWMonomial(self.z_ij, psi)))
        monomials = pbw.basis(self.z_ij, psi.vector)
        solution = self.algebra.oracle.express(image, [pbw.expand(m) for m in monomials])
        if solution is None:
            raise ReductionError(f"𝔘-image of {psi} is outside the PBW span")
        return {m.psi.exponents(self.roots): c for m, c in zip(monomials, solution) if c}

    # B₂ relations in the order of z_{|ji|}

    def b2_vectors(self) -> dict[str, AlgebraElement]:
        """E_ν, E_{ν+α₁}, E_{ν+2α₁}, E_1 along z_{|ji|} (ν = α_j long)."""
        if self.e != 2:
            raise UnsupportedType("the B₂ relations need 𝐞 = 2")
        names = ("nu", "tau", "gamma", "one")
        return {name: self.pbw.root_vector(self.b(r)) for r, name in enumerate(names, start=1)}

    def b2_terms(self, which: B2Relation, k: int, kp: int) -> dict[Exponents, Scalar]:
        """Right-hand side of a reordering identity as exponents (r, s, t, u) of E_ν^r E_τ^s E_γ^t E_1^u.

        ``gamma_delta`` reorders E_γ^k E_ν^{k′}, ``one_tau`` E_1^k E_τ^{k′} and ``one_nu`` E_1^k E_ν^{k′}.
        """
        if self.e != 2:
            raise UnsupportedType("the B₂ relations need 𝐞 = 2")
        ring = self.ring
        q = ring.qpow
        two = q(1) + q(-1)
        terms: dict[Exponents, Scalar] = {}
        match which:
            case "gamma_delta":
                for s in range(min(k, kp) + 1):
                    terms[(kp - s, 2 * s, k - s, 0)] = (
                        q(2 * s * (k + kp) - 3 * s * s)
                        * (q(1) - q(-1)) ** s
                        * qfact(s, 2, ring)
                        * qbinom(k, s, 2, ring)
                        * qbinom(kp, s, 2, ring)
                        / two**s
                    )
            case "one_tau":
                for s in range(min(k, kp) + 1):
                    terms[(0, kp - s, s, k - s)] = (
                        ring((-1) ** s)
                        * two**s
                        * q(s * (k + kp) - s * (3 * s + 1) // 2)
                        * qfact(s, 1, ring)
                        * qbinom(k, s, 1, ring)
                        * qbinom(kp, s, 1, ring)
                    )
            case "one_nu":
                for r in range(kp + 1):
                    for s in range(kp - r + 1):
                        t = kp - r - s
                        u = k - s - 2 * t
                        if u < 0:
                            continue
                        terms[(r, s, t, u)] = (
                            ring((-1) ** s)
                            * q(-2 * r * (u + t) - u * s)
                            * qfact(s, 2, ring)
                            * qfact(2 * t, 1, ring)
                            * qmultinom((s, 2 * t, u), 1, ring)
                            * qmultinom((r, s, t), 2, ring)
                        )
            case _:
                raise ValueError(f"unknown relation {which!r}")
        return terms

    def b2_relation(self, which: B2Relation, k: int, kp: int) -> tuple[AlgebraElement, AlgebraElement]:
        """Both sides of the reordering identities for E_γ^k E_ν^{k′}, E_1^k E_τ^{k′} and E_1^k E_ν^{k′}."""
        v = self.b2_vectors()
        match which:
            case "gamma_delta":
                lhs = v["gamma"] ** k * v["nu"] ** kp
            case "one_tau":
                lhs = v["one"] ** k * v["tau"] ** kp
            case "one_nu":
                lhs = v["one"] ** k * v["nu"] ** kp
            case _:
                raise ValueError(f"unknown relation {which!r}")
        total = self.algebra.zero
        for (r, s, t, u), c in self.b2_terms(which, k, kp).items():
            total = total + v["nu"] ** r * v["tau"] ** s * v["gamma"] ** t * v["one"] ** u * c
        return lhs, total

    def b2_rule(self) -> Rule:
        """Straightening rule along z_{|ji|}: the three identities at k = k′ = 1, q-commutation otherwise."""
        roots = self.algebra.system.convex_order(self.z_ji)
        table: dict[tuple[int, int], dict[Positions, Scalar]] = {}
        for a, b in ((1, 0), (2, 1), (3, 2)):
            table[(a, b)] = {(b, a): self.ring.qpow(self.algebra.pair(roots[a], roots[b]))}
        for (a, b), which in {(2, 0): "gamma_delta", (3, 1): "one_tau", (3, 0): "one_nu"}.items():
            rewritten = {}
            for ks, c in self.b2_terms(which, 1, 1).items():
                rewritten[tuple(p for p, k in enumerate(ks) for _ in range(k))] = c
            table[(a, b)] = rewritten

        def rule(a: int, b: int) -> dict[Positions, Scalar]:
            return table[(a, b)]

        return rule
