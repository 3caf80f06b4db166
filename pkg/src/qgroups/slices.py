"""Graded-slice equality oracle.

U⁺ is the free algebra on the E_i modulo the quantum Serre relations, graded by
ℤ_{≥0}^Δ. For a weight μ the span of ``u·S_ij·v`` (``S_ij`` a Serre relation,
``u`` and ``v`` words) is row-reduced once; the non-pivot words form a basis of
U⁺_μ and every pivot word is rewritten in that basis. U⁻ uses the same tables
with F in place of E, and U is handled through the triangular decomposition.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from functools import cache
from typing import TYPE_CHECKING, Literal, Mapping, Sequence

from sympy.polys.matrices import DomainMatrix
from sympy.utilities.iterables import multiset_permutations

from . import cache as slice_cache
from .coxeter import RootSystem
from .errors import DegreeBoundExceeded
from .qring import Scalar, qbinom
from .types import Weight, Word

if TYPE_CHECKING:
    from .uqcore import AlgebraElement, QuantumAlgebra, TensorElement, Term

logger = logging.getLogger(__name__)

Part = Literal["plus", "minus", "full"]


@dataclass(frozen=True, slots=True)
class SliceTable:
    weight: Weight
    words: tuple[Word, ...]
    basis: tuple[Word, ...]
    reductions: Mapping[Word, Mapping[Word, Scalar]]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def reduce(self, word: Word, one: Scalar) -> dict[Word, Scalar]:
        if word in self.reductions:
            return dict(self.reductions[word])
        return {word: one}


def words_of_weight(weight: Weight) -> list[Word]:
    """All words with ``weight[i-1]`` occurrences of the letter i, in reverse lexicographic order."""
    letters = [i + 1 for i, n in enumerate(weight) for _ in range(n)]
    if not letters:
        return [()]
    return sorted((tuple(w) for w in multiset_permutations(letters)), reverse=True)


@cache
def _partition_count(roots: tuple[Weight, ...], weight: Weight) -> int:
    if not any(weight):
        return 1
    if not roots:
        return 0
    first, rest = roots[0], roots[1:]
    total = 0
    remaining = weight
    while all(c >= 0 for c in remaining):
        total += _partition_count(rest, remaining)
        remaining = tuple(c - r for c, r in zip(remaining, first))
    return total


def kostant_partition_count(system: RootSystem, weight: Weight) -> int:
    """Number of ways to write ``weight`` as a sum of positive roots."""
    return _partition_count(system.positive, tuple(weight))


class SliceOracle:
    """Decides equality in U_q (or U_q^±) by reducing both sides to slice bases."""

    def __init__(self, algebra: QuantumAlgebra) -> None:
        self.algebra = algebra
        self.ring = algebra.ring
        self._tables: dict[Weight, SliceTable] = {}
        self._words: dict[Word, dict[Word, Scalar]] = {}
        self._lock = threading.Lock()

    def serre(self, i: int, j: int) -> dict[Word, Scalar]:
        """Σ_{r+s=1−a_ij} (−1)^s [1−a_ij choose s]_i  x_i^r x_j x_i^s as a word combination."""
        cartan = self.algebra.cartan
        n = 1 - cartan.A[i - 1][j - 1]
        d = cartan.d[i - 1]
        return {
            (i,) * (n - s) + (j,) + (i,) * s: self.ring((-1) ** s) * qbinom(n, s, d, self.ring) for s in range(n + 1)
        }

    def relations(self) -> list[dict[Word, Scalar]]:
        rank = self.algebra.rank
        return [self.serre(i, j) for i in range(1, rank + 1) for j in range(1, rank + 1) if i != j]

    def table(self, weight: Weight) -> SliceTable:
        weight = tuple(weight)
        if any(c < 0 for c in weight):
            raise ValueError(f"{weight} is not a nonnegative weight")
        if sum(weight) > self.algebra.degree_bound:
            raise DegreeBoundExceeded(f"height {sum(weight)} exceeds the degree bound {self.algebra.degree_bound}")
        table = self._tables.get(weight)
        if table is None:
            table = self._load_or_build(weight)
            with self._lock:
                table = self._tables.setdefault(weight, table)
        return table

    def _load_or_build(self, weight: Weight) -> SliceTable:
        directory = self.algebra.cache_dir
        path = None
        if directory is not None:
            path = slice_cache.cache_path(directory, self.algebra.cartan.type_label, self.algebra.ell, weight)
            cached = slice_cache.read_cached(path, self.ring, weight)
            if cached is not None:
                words, basis, reductions = cached
                return SliceTable(weight, words, basis, reductions)
        table = self._build(weight)
        if path is not None:
            slice_cache.write_cached(path, weight, table.words, table.basis, dict(table.reductions), self.ring)
        return table

    def _build(self, weight: Weight) -> SliceTable:
        words = tuple(words_of_weight(weight))
        index = {w: k for k, w in enumerate(words)}
        rows: dict[int, dict[int, Scalar]] = {}
        for relation in self.relations():
            first = next(iter(relation))
            rest = tuple(c - r for c, r in zip(weight, self.algebra.letters_weight(first)))
            if any(c < 0 for c in rest):
                continue
            for w in words_of_weight(rest):
                for k in range(len(w) + 1):
                    u, v = w[:k], w[k:]
                    rows[len(rows)] = {index[u + r + v]: c for r, c in relation.items()}
        if not rows:
            logger.debug("slice %s: %d words, free", weight, len(words))
            return SliceTable(weight, words, words, {})
        matrix = DomainMatrix.from_dod(rows, (len(rows), len(words)), self.ring.dom)
        reduced, pivots = matrix.rref(method=self.algebra.rref_method)
        dod = reduced.to_dod()
        pivot_set = set(pivots)
        reductions: dict[Word, dict[Word, Scalar]] = {}
        for row, p in enumerate(pivots):
            entries = dod.get(row, {})
            reductions[words[p]] = {words[c]: -v for c, v in entries.items() if c != p}
        basis = tuple(w for k, w in enumerate(words) if k not in pivot_set)
        logger.debug("slice %s: %d words, %d relations, dimension %d", weight, len(words), len(rows), len(basis))
        return SliceTable(weight, words, basis, reductions)

    def dimension(self, weight: Weight) -> int:
        return self.table(weight).dimension

    def reduce_word(self, word: Word) -> dict[Word, Scalar]:
        if word not in self._words:
            table = self.table(self.algebra.letters_weight(word))
            self._words[word] = table.reduce(word, self.ring.one)
        return self._words[word]

    def _reduce_term(self, t: Term) -> dict[Term, Scalar]:
        e, nu, f = t
        result = {}
        for ee, a in self.reduce_word(e).items():
            for ff, b in self.reduce_word(f).items():
                result[(ee, nu, ff)] = a * b
        return result

    def canonical(self, x: AlgebraElement) -> dict[Term, Scalar]:
        """Coordinates of x in the basis (slice basis of U⁺)·K^ν·(slice basis of U⁻)."""
        zero = self.ring.zero
        result: dict[Term, Scalar] = {}
        for t, c in x.terms.items():
            for key, v in self._reduce_term(t).items():
                result[key] = result.get(key, zero) + c * v
        return {k: v for k, v in result.items() if v}

    def canonical_tensor(self, x: TensorElement) -> dict[tuple[Term, ...], Scalar]:
        zero = self.ring.zero
        result: dict[tuple[Term, ...], Scalar] = {}
        for key, c in x.terms.items():
            partial: dict[tuple[Term, ...], Scalar] = {(): c}
            for part in key:
                reduced = self._reduce_term(part)
                partial = {k + (t,): a * b for k, a in partial.items() for t, b in reduced.items()}
            for k, v in partial.items():
                result[k] = result.get(k, zero) + v
        return {k: v for k, v in result.items() if v}

    def _check_part(self, x: AlgebraElement, part: Part) -> None:
        for e, nu, f in x.terms:
            if part == "plus" and (f or any(nu)):
                raise ValueError("element is not in U⁺")
            if part == "minus" and (e or any(nu)):
                raise ValueError("element is not in U⁻")

    def equal(self, x: AlgebraElement, y: AlgebraElement, part: Part = "full") -> bool:
        difference = x - y
        self._check_part(difference, part)
        return not self.canonical(difference)

    def tensor_equal(self, x: TensorElement, y: TensorElement) -> bool:
        return not self.canonical_tensor(x - y)

    def _solve(
        self, vectors: Sequence[Mapping[object, Scalar]], target: Mapping[object, Scalar]
    ) -> list[Scalar] | None:
        keys = sorted({k for v in (*vectors, target) for k in v}, key=repr)
        position = {k: n for n, k in enumerate(keys)}
        columns = [*vectors, target]
        dod: dict[int, dict[int, Scalar]] = {}
        for col, vector in enumerate(columns):
            for k, value in vector.items():
                dod.setdefault(position[k], {})[col] = value
        if not keys:
            return [self.ring.zero] * len(vectors)
        method = self.algebra.rref_method
        reduced, pivots = DomainMatrix.from_dod(dod, (len(keys), len(columns)), self.ring.dom).rref(method=method)
        if len(vectors) in pivots:
            return None
        solution = [self.ring.zero] * len(vectors)
        rows = reduced.to_dod()
        for row, p in enumerate(pivots):
            solution[p] = rows.get(row, {}).get(len(vectors), self.ring.zero)
        return solution

    def express(self, target: AlgebraElement, spanning: Sequence[AlgebraElement]) -> list[Scalar] | None:
        """Coefficients c with Σ c_k spanning[k] = target, or None when target is outside the span."""
        return self._solve([self.canonical(s) for s in spanning], self.canonical(target))

    def express_tensor(self, target: TensorElement, spanning: Sequence[TensorElement]) -> list[Scalar] | None:
        return self._solve([self.canonical_tensor(s) for s in spanning], self.canonical_tensor(target))

    def rank(self, elements: Sequence[AlgebraElement]) -> int:
        vectors = [self.canonical(x) for x in elements]
        keys = sorted({k for v in vectors for k in v}, key=repr)
        if not keys:
            return 0
        position = {k: n for n, k in enumerate(keys)}
        dod = {row: {position[k]: c for k, c in v.items()} for row, v in enumerate(vectors) if v}
        matrix = DomainMatrix.from_dod(dod, (len(vectors), len(keys)), self.ring.dom)
        return len(matrix.rref(method=self.algebra.rref_method)[1])
