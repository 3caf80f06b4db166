"""Finite root systems, Weyl groups and reduced-word combinatorics.

Conventions: simple roots and word letters are numbered from 1, weights are
tuples indexed from 0. ``B2`` and ``C2`` denote the same Cartan data, with
α₁ short (d = (1, 2)); ``B_n`` for n ≥ 3 uses Bourbaki numbering
(α_n short).
"""

from __future__ import annotations

import logging
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, cached_property
from typing import Iterable, Iterator, Literal, Sequence

from .errors import NotPrefix, NotReduced, RootSystemError, UnsupportedType
from .types import HalfWeight, Weight, Word

logger = logging.getLogger(__name__)

CLOSURE_CAP = 300

Vector = Sequence[int] | Sequence[Fraction]


@dataclass(frozen=True)
class CartanData:
    type_label: str
    A: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.d)
        if len(self.A) != n or any(len(row) != n for row in self.A):
            raise RootSystemError(f"{self.type_label}: Cartan matrix must be {n}×{n}")
        for i in range(n):
            if self.A[i][i] != 2:
                raise RootSystemError(f"{self.type_label}: A_ii must be 2")
            for j in range(n):
                if i != j and self.A[i][j] > 0:
                    raise RootSystemError(f"{self.type_label}: off-diagonal entries must be ≤ 0")
                if self.d[i] * self.A[i][j] != self.d[j] * self.A[j][i]:
                    raise RootSystemError(f"{self.type_label}: d does not symmetrize A")
        if min(self.d) != 1:
            raise RootSystemError(f"{self.type_label}: min d_i must be 1")

    @property
    def rank(self) -> int:
        return len(self.d)

    @property
    def e(self) -> int:
        return max(self.d)

    @property
    def e_star(self) -> int:
        return self.e + 1

    @property
    def family(self) -> str:
        """Lie family letter, with rank-2 B/C reported as ``B``."""
        letter = self.type_label[0]
        if letter == "C" and self.rank == 2:
            return "B"
        return letter

    @cached_property
    def B(self) -> tuple[tuple[int, ...], ...]:
        """Symmetrized matrix B_ij = (α_i|α_j) = d_i A_ij."""
        n = self.rank
        return tuple(tuple(self.d[i] * self.A[i][j] for j in range(n)) for i in range(n))

    def m(self, i: int, j: int) -> int:
        """Order of s_i s_j (1-based indices)."""
        if i == j:
            return 1
        return {0: 2, 1: 3, 2: 4, 3: 6}[self.A[i - 1][j - 1] * self.A[j - 1][i - 1]]


_LABEL = re.compile(r"^([A-G])(\d+)$")


def _from_edges(label: str, d: Sequence[int], edges: Iterable[tuple[int, int]]) -> CartanData:
    n = len(d)
    B = [[0] * n for _ in range(n)]
    for i in range(n):
        B[i][i] = 2 * d[i]
    for a, b in edges:
        B[a - 1][b - 1] = B[b - 1][a - 1] = -max(d[a - 1], d[b - 1])
    A = tuple(tuple(B[i][j] // d[i] for j in range(n)) for i in range(n))
    return CartanData(type_label=label, A=A, d=tuple(d))


@cache
def cartan_type(label: str) -> CartanData:
    """Cartan data for a finite type label such as ``A3``, ``B2`` or ``G2``."""
    match = _LABEL.match(label.strip().upper())
    if not match:
        raise RootSystemError(f"Unknown Cartan type {label!r}")
    letter, n = match.group(1), int(match.group(2))
    chain = [(i, i + 1) for i in range(1, n)]
    match letter, n:
        case "A", _ if n >= 1:
            return _from_edges(f"A{n}", [1] * n, chain)
        case "B" | "C", 2:
            return _from_edges(f"{letter}2", [1, 2], chain)
        case "B", _ if n >= 3:
            return _from_edges(f"B{n}", [2] * (n - 1) + [1], chain)
        case "C", _ if n >= 3:
            return _from_edges(f"C{n}", [1] * (n - 1) + [2], chain)
        case "D", _ if n >= 4:
            return _from_edges(f"D{n}", [1] * n, [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)])
        case "E", 6 | 7 | 8:
            edges = [(a, b) for a, b in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)] if b <= n]
            return _from_edges(f"E{n}", [1] * n, edges)
        case "F", 4:
            return _from_edges("F4", [2, 2, 1, 1], chain)
        case "G", 2:
            return _from_edges("G2", [1, 3], chain)
    raise RootSystemError(f"Unknown Cartan type {label!r}")


@dataclass(frozen=True)
class WeylElement:
    """Integer matrix acting on ℤ^Δ, rows indexed like weights."""

    matrix: tuple[tuple[int, ...], ...]

    def __call__(self, x: Vector) -> tuple:  # type: ignore[type-arg]
        return tuple(sum(row[j] * x[j] for j in range(len(x))) for row in self.matrix)

    def __mul__(self, other: WeylElement) -> WeylElement:
        n = len(self.matrix)
        cols = list(zip(*other.matrix))
        return WeylElement(
            tuple(tuple(sum(self.matrix[r][k] * cols[c][k] for k in range(n)) for c in range(n)) for r in range(n))
        )


@dataclass(frozen=True)
class PhiSymmetricMap:
    matrix: tuple[tuple[int, ...], ...]

    def __call__(self, x: Vector) -> tuple:  # type: ignore[type-arg]
        return tuple(sum(row[j] * x[j] for j in range(len(x))) for row in self.matrix)

    def __add__(self, other: PhiSymmetricMap) -> PhiSymmetricMap:
        return PhiSymmetricMap(
            tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.matrix, other.matrix))
        )

    def scaled(self, factor: int) -> PhiSymmetricMap:
        return PhiSymmetricMap(tuple(tuple(factor * a for a in row) for row in self.matrix))

    @classmethod
    def identity(cls, rank: int) -> PhiSymmetricMap:
        return cls(tuple(tuple(int(r == c) for c in range(rank)) for r in range(rank)))

    @classmethod
    def from_weyl(cls, s: WeylElement) -> PhiSymmetricMap:
        return cls(s.matrix)


@dataclass(frozen=True)
class BraidMove:
    position: int
    before: Word
    after: Word


@dataclass(frozen=True)
class Duality:
    eta: tuple[int, ...]
    """η as a permutation: ``eta[i - 1]`` is η(i)."""
    perp: WeylElement
    dagger: WeylElement


@dataclass(frozen=True)
class Rank2Factorization:
    t: WeylElement
    r: WeylElement
    j: int


@cache
def build_root_system(cartan: CartanData) -> RootSystem:
    return RootSystem(cartan)


class RootSystem:
    def __init__(self, cartan: CartanData) -> None:
        self.cartan = cartan
        self.rank = cartan.rank
        self.positive: tuple[Weight, ...] = self._saturate()
        self._positive_set = frozenset(self.positive)
        logger.debug("%s: %d positive roots", cartan.type_label, len(self.positive))

    def _saturate(self) -> tuple[Weight, ...]:
        known = {self.simple(i) for i in range(1, self.rank + 1)}
        frontier = set(known)
        for _ in range(CLOSURE_CAP):
            fresh = set()
            for beta in frontier:
                for i in range(1, self.rank + 1):
                    image = self.simple_reflect(i, beta)
                    if all(c >= 0 for c in image) and image not in known:
                        fresh.add(image)
            if not fresh:
                return tuple(sorted(known, key=lambda b: (sum(b), b)))
            known |= fresh
            frontier = fresh
        raise RootSystemError(f"{self.cartan.type_label}: root closure did not terminate, type is not finite")

    # lattice and forms

    def simple(self, i: int) -> Weight:
        return tuple(int(k == i - 1) for k in range(self.rank))

    def pair(self, x: Vector, y: Vector) -> int | Fraction:
        """The symmetric form (x|y)."""
        B = self.cartan.B
        total = sum(x[i] * B[i][j] * y[j] for i in range(self.rank) for j in range(self.rank) if x[i] and y[j])
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    def ipair(self, x: Vector, y: Vector) -> int:
        value = self.pair(x, y)
        if isinstance(value, Fraction):
            raise ValueError(f"({x}|{y}) = {value} is not an integer")
        return value

    def height(self, beta: Vector) -> int | Fraction:
        return sum(beta)

    def d_of(self, beta: Weight) -> int:
        return self.ipair(beta, beta) // 2

    def is_long(self, beta: Weight) -> bool:
        return self.d_of(beta) == self.cartan.e

    def is_short(self, beta: Weight) -> bool:
        return self.d_of(beta) == 1

    def is_root(self, x: Weight) -> bool:
        return x in self._positive_set or tuple(-c for c in x) in self._positive_set

    def is_positive(self, x: Weight) -> bool:
        return x in self._positive_set

    def simple_index(self, x: Weight) -> int | None:
        if sum(x) == 1 and all(c in (0, 1) for c in x):
            return x.index(1) + 1
        return None

    def coroot_pairing(self, alpha: Weight, x: Vector) -> int:
        """⟨α, x⟩ = 2(α|x)/(α|α)."""
        num = self.pair(alpha, x) * 2
        den = self.ipair(alpha, alpha)
        value = Fraction(num) / den
        if value.denominator != 1:
            raise ValueError(f"⟨{alpha}, {x}⟩ is not integral")
        return int(value)

    def coroot(self, alpha: Weight) -> HalfWeight:
        """α̌ = α / d_α in simple-root coordinates."""
        d = self.d_of(alpha)
        return tuple(Fraction(c, d) for c in alpha)

    def simple_reflect(self, i: int, x: Weight) -> Weight:
        A = self.cartan.A
        c = sum(A[i - 1][j] * x[j] for j in range(self.rank))
        return tuple(x[k] - c * (k == i - 1) for k in range(self.rank))

    def reflect(self, alpha: Weight, x: Weight) -> Weight:
        """s_α(x) = x − ⟨α, x⟩α."""
        if not self.is_root(alpha):
            raise RootSystemError(f"{alpha} is not a root of {self.cartan.type_label}")
        c = self.coroot_pairing(alpha, x)
        return tuple(a - c * b for a, b in zip(x, alpha))

    @cached_property
    def rho(self) -> HalfWeight:
        return tuple(Fraction(sum(b[k] for b in self.positive), 2) for k in range(self.rank))

    @cached_property
    def rho_check(self) -> HalfWeight:
        coroots = [self.coroot(b) for b in self.positive]
        return tuple(sum((c[k] for c in coroots), Fraction(0)) / 2 for k in range(self.rank))

    # Weyl group

    @cached_property
    def identity(self) -> WeylElement:
        return WeylElement(tuple(tuple(int(r == c) for c in range(self.rank)) for r in range(self.rank)))

    def reflection(self, i: int) -> WeylElement:
        A = self.cartan.A
        return WeylElement(
            tuple(
                tuple(int(r == c) - (A[i - 1][c] if r == i - 1 else 0) for c in range(self.rank))
                for r in range(self.rank)
            )
        )

    def element(self, word: Word) -> WeylElement:
        s = self.identity
        for letter in word:
            s = s * self.reflection(letter)
        return s

    def inverse(self, s: WeylElement) -> WeylElement:
        return self.inverse_by_transpose(s)

    def inversion_set(self, s: WeylElement) -> list[Weight]:
        """𝒩(s) = Φ⁺ ∩ s(Φ⁻), listed in root-table order."""
        s_inv = self.inverse(s)
        return [beta for beta in self.positive if not self.is_positive(s_inv(beta))]

    def length(self, s: WeylElement) -> int:
        return sum(1 for beta in self.positive if not self.is_positive(s(beta)))

    def is_right_descent(self, s: WeylElement, i: int) -> bool:
        return not self.is_positive(s(self.simple(i)))

    def reduced_word(self, s: WeylElement) -> Word:
        """Lexicographically least reduced word, by greedy left descents."""
        letters: list[int] = []
        current = s
        while current != self.identity:
            inv = self.inverse_by_transpose(current)
            for i in range(1, self.rank + 1):
                if not self.is_positive(inv(self.simple(i))):
                    letters.append(i)
                    current = self.reflection(i) * current
                    break
            else:  # pragma: no cover
                raise RootSystemError("element without left descent")
        return tuple(letters)

    def inverse_by_transpose(self, s: WeylElement) -> WeylElement:
        """s⁻¹ = B⁻¹ sᵀ B, computed through the images of simple roots."""
        # s is an isometry: (s⁻¹ α_i | α_j) = (α_i | s α_j)
        n = self.rank
        B = self.cartan.B
        # columns of s⁻¹: solve B c = v with v_j = (α_i | s α_j)
        cols = []
        for i in range(n):
            v = [self.pair(self.simple(i + 1), s(self.simple(j + 1))) for j in range(n)]
            cols.append(_solve_integral(B, v))
        return WeylElement(tuple(tuple(cols[c][r] for c in range(n)) for r in range(n)))

    @cached_property
    def longest(self) -> WeylElement:
        s = self.identity
        grown = True
        while grown:
            grown = False
            for i in range(1, self.rank + 1):
                if self.is_positive(s(self.simple(i))):
                    s = s * self.reflection(i)
                    grown = True
                    break
        return s

    @cached_property
    def elements(self) -> tuple[WeylElement, ...]:
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            s = queue.popleft()
            for i in range(1, self.rank + 1):
                t = s * self.reflection(i)
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return tuple(sorted(seen, key=lambda s: (self.length(s), self.reduced_word(s))))

    # words

    def inversion_sequence(self, word: Word) -> list[Weight]:
        """β_m = γ(w[1, m]) for every prefix; raises if the word is not reduced."""
        seen: list[Weight] = []
        s = self.identity
        for letter in word:
            if not 1 <= letter <= self.rank:
                raise ValueError(f"letter {letter} out of range for {self.cartan.type_label}")
            beta = s(self.simple(letter))
            if not self.is_positive(beta) or beta in seen:
                raise NotReduced(f"{word} is not reduced in {self.cartan.type_label}")
            seen.append(beta)
            s = s * self.reflection(letter)
        return seen

    def is_reduced(self, word: Word) -> bool:
        try:
            self.inversion_sequence(word)
        except NotReduced:
            return False
        return True

    def gamma(self, word: Word) -> Weight:
        if not word:
            raise NotReduced("γ is defined on non-empty words")
        return self.inversion_sequence(word)[-1]

    def length_defect(self, a: WeylElement, b: WeylElement) -> int:
        """ζ(a, b) = |𝒩(b) ∩ 𝒩(a⁻¹)|, so that l(ab) = l(a) + l(b) − 2ζ(a, b)."""
        return len(set(self.inversion_set(b)) & set(self.inversion_set(self.inverse(a))))

    def is_maximal(self, word: Word) -> bool:
        return len(word) == len(self.positive) and self.is_reduced(word)

    def maximal_extension(self, w: Word) -> Word:
        """A maximal reduced word z with w ≤_R z, extended by the smallest letters first."""
        self.inversion_sequence(w)
        z = tuple(w)
        s = self.element(z)
        while len(z) < len(self.positive):
            for i in range(1, self.rank + 1):
                if self.is_positive(s(self.simple(i))):
                    z += (i,)
                    s = s * self.reflection(i)
                    break
        return z

    def convex_order(self, z: Word) -> list[Weight]:
        if not self.is_maximal(z):
            raise NotReduced(f"{z} is not a reduced word of maximal length")
        return self.inversion_sequence(z)

    def is_convex(self, order: Sequence[Weight]) -> bool:
        position = {beta: k for k, beta in enumerate(order)}
        for a in order:
            for b in order:
                if position[a] < position[b]:
                    c = tuple(x + y for x, y in zip(a, b))
                    if c in position and not position[a] < position[c] < position[b]:
                        return False
        return True

    def reduced_words(self, s: WeylElement, *, max_rank: int = 4) -> tuple[Word, ...]:
        if self.rank > max_rank:
            raise UnsupportedType(f"reduced-word enumeration is capped at rank {max_rank}")
        return self._reduced_words(s)

    def _reduced_words(self, s: WeylElement) -> tuple[Word, ...]:
        memo: dict[WeylElement, tuple[Word, ...]] = {self.identity: ((),)}

        def visit(t: WeylElement) -> tuple[Word, ...]:
            if t in memo:
                return memo[t]
            words: list[Word] = []
            for i in range(1, self.rank + 1):
                if self.is_right_descent(t, i):
                    words.extend(w + (i,) for w in visit(t * self.reflection(i)))
            memo[t] = tuple(sorted(words))
            return memo[t]

        return visit(s)

    def maximal_words(self, *, max_rank: int = 4) -> tuple[Word, ...]:
        return self.reduced_words(self.longest, max_rank=max_rank)

    def braid_neighbours(self, word: Word) -> Iterator[BraidMove]:
        for p in range(len(word)):
            for i in range(1, self.rank + 1):
                for j in range(1, self.rank + 1):
                    if i == j:
                        continue
                    m = self.cartan.m(i, j)
                    before = tuple(i if k % 2 == 0 else j for k in range(m))
                    if word[p : p + m] == before:
                        after = tuple(j if k % 2 == 0 else i for k in range(m))
                        yield BraidMove(position=p, before=before, after=after)

    def matsumoto_path(self, w: Word, w2: Word) -> list[BraidMove] | None:
        """Braid moves turning ``w`` into ``w2``, or None when they represent different elements."""
        for word in (w, w2):
            if not self.is_reduced(word):
                raise NotReduced(f"{word} is not reduced")
        if self.element(w) != self.element(w2):
            return None
        previous: dict[Word, tuple[Word, BraidMove] | None] = {w: None}
        queue = deque([w])
        while queue:
            current = queue.popleft()
            if current == w2:
                break
            for move in self.braid_neighbours(current):
                p = move.position
                nxt = current[:p] + move.after + current[p + len(move.before) :]
                if nxt not in previous:
                    previous[nxt] = (current, move)
                    queue.append(nxt)
        path: list[BraidMove] = []
        node = w2
        while (link := previous[node]) is not None:
            node, move = link
            path.append(move)
        return list(reversed(path))

    # duality

    @cached_property
    def eta(self) -> tuple[int, ...]:
        images = []
        for i in range(1, self.rank + 1):
            image = tuple(-c for c in self.longest(self.simple(i)))
            index = self.simple_index(image)
            assert index is not None
            images.append(index)
        return tuple(images)

    def dagger(self, word: Word) -> Word:
        """w† = η(w*)."""
        return tuple(self.eta[x - 1] for x in reversed(word))

    def eta_and_perp(self, t: WeylElement | Word) -> Duality:
        s = self.element(t) if isinstance(t, tuple) else t
        longest = self.longest
        return Duality(
            eta=self.eta,
            perp=s * longest,
            dagger=longest * self.inverse(s) * longest,
        )

    def complementary(self, w: Word, z: Word) -> Word:
        """The word v = z†[1, N + 1 − r] complementary to the prefix w = z[1, r]."""
        if not self.is_maximal(z):
            raise NotReduced(f"{z} is not maximal")
        r = len(w)
        if not w or z[:r] != w:
            raise NotPrefix(f"{w} is not a non-empty prefix of {z}")
        return self.dagger(z)[: len(z) + 1 - r]

    # root sums

    def theta(self, s: WeylElement) -> Weight:
        """θ(s) = ρ − s(ρ), the sum of 𝒩(s)."""
        value = tuple(a - b for a, b in zip(self.rho, s(self.rho)))
        return tuple(int(c) for c in value)

    def theta_check(self, s: WeylElement) -> HalfWeight:
        return tuple(a - b for a, b in zip(self.rho_check, s(self.rho_check)))

    def theta_sums(self, s: WeylElement) -> tuple[Weight, HalfWeight]:
        return self.theta(s), self.theta_check(s)

    def is_phi_symmetric(self, h: PhiSymmetricMap) -> bool:
        n = self.rank
        for i in range(n):
            for j in range(n):
                if self.pair(h(self.simple(i + 1)), self.simple(j + 1)) != self.pair(
                    self.simple(i + 1), h(self.simple(j + 1))
                ):
                    return False
        return True

    def rho_h(self, h: PhiSymmetricMap) -> HalfWeight:
        """The vector with (ρ_h|α_i) = ½(α_i|h(α_i))."""
        if not self.is_phi_symmetric(h):
            raise ValueError("h is not Φ-symmetric")
        rhs = [Fraction(self.ipair(self.simple(i), h(self.simple(i))), 2) for i in range(1, self.rank + 1)]
        return tuple(_solve_rational(self.cartan.B, rhs))

    def theta_h(self, s: WeylElement, h: PhiSymmetricMap) -> HalfWeight:
        """θ_h(s) = ρ_{shs⁻¹} − s(ρ_h)."""
        conj = PhiSymmetricMap((s * WeylElement(h.matrix) * self.inverse(s)).matrix)
        return tuple(a - b for a, b in zip(self.rho_h(conj), s(self.rho_h(h))))

    def rank2_extract(self, s: WeylElement, i: int) -> Rank2Factorization:
        """Factor s = t·r with r in a rank-2 parabolic subgroup containing s_i."""
        if self.length(s * self.reflection(i)) != self.length(s) + 1 or self.length(s) < 1:
            raise ValueError("rank2_extract needs l(s·s_i) = l(s) + 1 ≥ 2")
        for j in range(1, self.rank + 1):
            if j == i:
                continue
            t = s
            while True:
                for k in (i, j):
                    if self.is_right_descent(t, k):
                        t = t * self.reflection(k)
                        break
                else:
                    break
            r = self.inverse(t) * s
            if 1 <= self.length(r) < self.cartan.m(i, j):
                return Rank2Factorization(t=t, r=r, j=j)
        raise ValueError("no rank-2 factorization found")

    def good_numbering(self) -> tuple[int, ...]:
        """Good label of each simple root, reversing Bourbaki numbering for B_n (n ≥ 3) and F₄."""
        n = self.rank
        if self.cartan.type_label[0] in "BF" and n >= 3:
            return tuple(n + 1 - i for i in range(1, n + 1))
        return tuple(range(1, n + 1))

    def box_key(self, beta: Weight) -> tuple[int, Fraction]:
        """(g(β), h′(β)) in the good numbering."""
        good = self.good_numbering()
        coefficients = {good[k]: beta[k] for k in range(self.rank)}
        g = max(label for label, c in coefficients.items() if c)
        return g, Fraction(sum(beta), coefficients[g])

    def refines_box_preorder(self, order: Sequence[Weight]) -> bool:
        position = {beta: k for k, beta in enumerate(order)}
        for a in order:
            for b in order:
                ga, ha = self.box_key(a)
                gb, hb = self.box_key(b)
                below = ga >= gb and ha <= hb
                above = gb >= ga and hb <= ha
                if below and not above and position[a] > position[b]:
                    return False
        return True

    def word_from_order(self, order: Sequence[Weight]) -> Word:
        letters: list[int] = []
        s_inv = self.identity
        for beta in order:
            index = self.simple_index(tuple(s_inv(beta)))
            if index is None:
                raise RootSystemError("order is not convex")
            letters.append(index)
            s_inv = self.reflection(index) * s_inv
        return tuple(letters)

    def box_maximal_word(self) -> Word:
        if self.cartan.family not in "ABCG":
            raise UnsupportedType(f"box-refining words are provided for types A, B, C, G, not {self.cartan.type_label}")
        order = sorted(self.positive, key=lambda b: (-self.box_key(b)[0], self.box_key(b)[1], b))
        word = self.word_from_order(order)
        if self.convex_order(word) != order:  # pragma: no cover
            raise RootSystemError("box order does not come from a maximal word")
        return word

    def mod2_discrete(self, s: WeylElement, variant: Literal["all", "long", "short"] = "all") -> bool:
        roots = self.inversion_set(s)
        match variant:
            case "long":
                roots = [b for b in roots if self.is_long(b)]
            case "short":
                roots = [b for b in roots if self.is_short(b)]
        for a in roots:
            for b in roots:
                if variant == "all" and self.d_of(a) < self.d_of(b):
                    continue
                if self.coroot_pairing(a, b) % 2:
                    return False
        return True


def _solve_rational(B: Sequence[Sequence[int]], rhs: Sequence[Fraction | int]) -> list[Fraction]:
    """Solve B x = rhs exactly with sympy's dense domain matrices over QQ."""
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix

    n = len(rhs)
    matrix = DomainMatrix([[QQ(B[i][j]) for j in range(n)] for i in range(n)], (n, n), QQ)
    vector = DomainMatrix(
        [[QQ(Fraction(v).numerator, Fraction(v).denominator)] for v in rhs],
        (n, 1),
        QQ,
    )
    solution = matrix.lu_solve(vector).to_list()
    return [Fraction(int(row[0].numerator), int(row[0].denominator)) for row in solution]


def _solve_integral(B: Sequence[Sequence[int]], rhs: Sequence[int | Fraction]) -> list[int]:
    values = _solve_rational(B, rhs)
    if any(v.denominator != 1 for v in values):  # pragma: no cover
        raise RootSystemError("non-integral Weyl matrix")
    return [int(v) for v in values]


@dataclass(kw_only=True, slots=True)
class Rank2Tables:
    """ρ_{s_i} and θ_{s_i}(s_j) for a rank-2 root system."""

    rho_s: dict[int, HalfWeight] = field(default_factory=dict)
    theta_s: dict[tuple[int, int], HalfWeight] = field(default_factory=dict)


def rank2_tables(system: RootSystem) -> Rank2Tables:
    if system.rank != 2:
        raise UnsupportedType("rank-2 tables need a rank-2 root system")
    tables = Rank2Tables()
    for i in (1, 2):
        h = PhiSymmetricMap.from_weyl(system.reflection(i))
        tables.rho_s[i] = system.rho_h(h)
        for j in (1, 2):
            tables.theta_s[i, j] = system.theta_h(system.reflection(j), h)
    return tables
