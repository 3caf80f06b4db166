"""On-disk store for slice tables.

Layout, little-endian::

    magic "QGSL" | version u16 | rank u16 | weight i32*rank
    words:       count u32, then per word: length u16, letters u8*length
    basis:       count u32, word indices u32*count
    reductions:  count u32, then per pivot word:
                 word index u32, entries u32, then per entry: basis index u32, scalar

A scalar is its numerator and denominator, each a u32 count of
``(exponent i32, numerator int, denominator int)`` triples, where an int is a
u16 byte length followed by two's-complement bytes.
"""

from __future__ import annotations

import logging
import struct
from fractions import Fraction
from io import BytesIO
from pathlib import Path
from typing import BinaryIO

from .errors import CacheFormatError
from .qring import Scalar, ScalarRing
from .types import Weight, Word

logger = logging.getLogger(__name__)

MAGIC = b"QGSL"
VERSION = 1


def cache_path(directory: Path, type_label: str, ell: int, weight: Weight) -> Path:
    return directory / f"{type_label}-{ell}-{'_'.join(map(str, weight))}.slice"


def _write_int(out: BinaryIO, value: int) -> None:
    data = value.to_bytes((value.bit_length() + 8) // 8 or 1, "little", signed=True)
    out.write(struct.pack("<H", len(data)))
    out.write(data)


def _read(buffer: BinaryIO, fmt: str) -> tuple[int, ...]:
    size = struct.calcsize(fmt)
    data = buffer.read(size)
    if len(data) != size:
        raise CacheFormatError("truncated slice cache")
    return struct.unpack(fmt, data)


def _read_int(buffer: BinaryIO) -> int:
    (length,) = _read(buffer, "<H")
    data = buffer.read(length)
    if len(data) != length:
        raise CacheFormatError("truncated slice cache")
    return int.from_bytes(data, "little", signed=True)


def _write_scalar(out: BinaryIO, ring: ScalarRing, value: Scalar) -> None:
    for part in ring.to_parts(value):
        out.write(struct.pack("<I", len(part)))
        for exponent, coefficient in part:
            out.write(struct.pack("<i", exponent))
            _write_int(out, coefficient.numerator)
            _write_int(out, coefficient.denominator)


def _read_scalar(buffer: BinaryIO, ring: ScalarRing) -> Scalar:
    parts: list[list[tuple[int, Fraction]]] = []
    for _ in range(2):
        (count,) = _read(buffer, "<I")
        part = []
        for _ in range(count):
            (exponent,) = _read(buffer, "<i")
            numerator = _read_int(buffer)
            part.append((exponent, Fraction(numerator, _read_int(buffer))))
        parts.append(part)
    return ring.from_parts(parts[0], parts[1])


def dump_table(
    weight: Weight,
    words: tuple[Word, ...],
    basis: tuple[Word, ...],
    reductions: dict[Word, dict[Word, Scalar]],
    ring: ScalarRing,
) -> bytes:
    index = {w: k for k, w in enumerate(words)}
    basis_index = {w: k for k, w in enumerate(basis)}
    out = BytesIO()
    out.write(MAGIC)
    out.write(struct.pack("<HH", VERSION, len(weight)))
    out.write(struct.pack(f"<{len(weight)}i", *weight))
    out.write(struct.pack("<I", len(words)))
    for w in words:
        out.write(struct.pack(f"<H{len(w)}B", len(w), *w))
    out.write(struct.pack(f"<I{len(basis)}I", len(basis), *(index[w] for w in basis)))
    out.write(struct.pack("<I", len(reductions)))
    for pivot, combination in reductions.items():
        out.write(struct.pack("<II", index[pivot], len(combination)))
        for w, c in combination.items():
            out.write(struct.pack("<I", basis_index[w]))
            _write_scalar(out, ring, c)
    return out.getvalue()


def load_table(
    data: bytes, ring: ScalarRing, weight: Weight | None = None
) -> tuple[Weight, tuple[Word, ...], tuple[Word, ...], dict[Word, dict[Word, Scalar]]]:
    """Decode a slice table. When ``weight`` is given the stored slice must be that one."""
    try:
        return _load_table(data, ring, weight)
    except (IndexError, ZeroDivisionError, ValueError) as error:
        raise CacheFormatError(f"corrupt slice cache: {error}") from None


def _word_weight(word: Word, rank: int) -> Weight:
    if any(not 1 <= letter <= rank for letter in word):
        raise CacheFormatError(f"letter out of range in {word}")
    return tuple(word.count(i) for i in range(1, rank + 1))


def _load_table(
    data: bytes, ring: ScalarRing, expected: Weight | None
) -> tuple[Weight, tuple[Word, ...], tuple[Word, ...], dict[Word, dict[Word, Scalar]]]:
    buffer = BytesIO(data)
    if buffer.read(4) != MAGIC:
        raise CacheFormatError("not a slice cache file")
    version, rank = _read(buffer, "<HH")
    if version != VERSION:
        raise CacheFormatError(f"unsupported slice cache version {version}")
    weight = _read(buffer, f"<{rank}i")
    if expected is not None and weight != tuple(expected):
        raise CacheFormatError(f"slice cache holds weight {weight}, expected {tuple(expected)}")
    (count,) = _read(buffer, "<I")
    words = []
    for _ in range(count):
        (length,) = _read(buffer, "<H")
        word = _read(buffer, f"<{length}B")
        if _word_weight(word, rank) != weight:
            raise CacheFormatError(f"word {word} does not have weight {weight}")
        words.append(word)
    (count,) = _read(buffer, "<I")
    basis = tuple(words[k] for k in _read(buffer, f"<{count}I"))
    reductions: dict[Word, dict[Word, Scalar]] = {}
    (count,) = _read(buffer, "<I")
    for _ in range(count):
        pivot, entries = _read(buffer, "<II")
        combination = {}
        for _ in range(entries):
            (k,) = _read(buffer, "<I")
            combination[basis[k]] = _read_scalar(buffer, ring)
        reductions[words[pivot]] = combination
    return weight, tuple(words), basis, reductions


Table = tuple[tuple[Word, ...], tuple[Word, ...], dict[Word, dict[Word, Scalar]]]
"""Words of a slice, its basis words, and the reduction of every other word."""


def read_cached(path: Path, ring: ScalarRing, weight: Weight | None = None) -> Table | None:
    if not path.exists():
        return None
    try:
        _, words, basis, reductions = load_table(path.read_bytes(), ring, weight)
    except CacheFormatError as error:
        logger.warning("ignoring slice cache %s: %s", path, error)
        return None
    logger.debug("slice cache hit %s", path.name)
    return words, basis, reductions


def write_cached(
    path: Path,
    weight: Weight,
    words: tuple[Word, ...],
    basis: tuple[Word, ...],
    reductions: dict[Word, dict[Word, Scalar]],
    ring: ScalarRing,
) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_bytes(dump_table(weight, words, basis, reductions, ring))
    tmp.replace(path)
    logger.debug("slice cache stored %s", path.name)
