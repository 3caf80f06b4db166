from __future__ import annotations

import struct
from pathlib import Path

import pytest

from qgroups.cache import MAGIC, cache_path, dump_table, load_table, read_cached
from qgroups.coxeter import cartan_type
from qgroups.errors import CacheFormatError
from qgroups.uqcore import QuantumAlgebra


def test_dump_and_load(a2: QuantumAlgebra) -> None:
    table = a2.oracle.table((2, 1))
    data = dump_table(table.weight, table.words, table.basis, dict(table.reductions), a2.ring)
    assert data.startswith(MAGIC)
    weight, words, basis, reductions = load_table(data, a2.ring)
    assert weight == (2, 1)
    assert words == table.words
    assert basis == table.basis
    assert reductions == table.reductions


def test_cyclotomic_scalars() -> None:
    algebra = QuantumAlgebra(cartan_type("B2"), 5)
    table = algebra.oracle.table((3, 1))
    assert table.reductions
    data = dump_table(table.weight, table.words, table.basis, dict(table.reductions), algebra.ring)
    assert load_table(data, algebra.ring)[3] == table.reductions


def test_oracle_uses_cache(tmp_path: Path) -> None:
    writer = QuantumAlgebra(cartan_type("A2"), cache_dir=tmp_path)
    table = writer.oracle.table((2, 1))
    path = cache_path(tmp_path, "A2", 0, (2, 1))
    assert path.name == "A2-0-2_1.slice"
    assert path.exists()

    reader = QuantumAlgebra(cartan_type("A2"), cache_dir=tmp_path)
    assert reader.oracle.table((2, 1)) == table


def test_malformed_files(a2: QuantumAlgebra, tmp_path: Path) -> None:
    table = a2.oracle.table((2, 1))
    data = dump_table(table.weight, table.words, table.basis, dict(table.reductions), a2.ring)

    with pytest.raises(CacheFormatError):
        load_table(b"XXXX" + data[4:], a2.ring)
    with pytest.raises(CacheFormatError):
        load_table(MAGIC + struct.pack("<HH", 99, 2) + data[8:], a2.ring)
    with pytest.raises(CacheFormatError):
        load_table(data[:-3], a2.ring)

    path = tmp_path / "broken.slice"
    path.write_bytes(data[:10])
    assert read_cached(path, a2.ring) is None
    assert read_cached(tmp_path / "missing.slice", a2.ring) is None


def test_stored_weight_must_match(a2: QuantumAlgebra, tmp_path: Path) -> None:
    small = a2.oracle.table((1, 1))
    data = dump_table(small.weight, small.words, small.basis, dict(small.reductions), a2.ring)
    assert load_table(data, a2.ring, (1, 1))[0] == (1, 1)
    with pytest.raises(CacheFormatError):
        load_table(data, a2.ring, (2, 1))

    path = cache_path(tmp_path, "A2", 0, (2, 1))
    path.write_bytes(data)
    assert read_cached(path, a2.ring, (2, 1)) is None

    algebra = QuantumAlgebra(cartan_type("A2"), cache_dir=tmp_path)
    assert algebra.oracle.table((2, 1)).words == ((2, 1, 1), (1, 2, 1), (1, 1, 2))


def test_out_of_range_indices(a2: QuantumAlgebra, tmp_path: Path) -> None:
    table = a2.oracle.table((2, 1))
    data = bytearray(dump_table(table.weight, table.words, table.basis, dict(table.reductions), a2.ring))
    # header, weight, three words of three letters, basis count
    offset = 4 + 4 + 8 + 4 + 3 * (2 + 3) + 4
    data[offset : offset + 4] = struct.pack("<I", 99)
    with pytest.raises(CacheFormatError):
        load_table(bytes(data), a2.ring)

    path = tmp_path / "patched.slice"
    path.write_bytes(bytes(data))
    assert read_cached(path, a2.ring) is None
