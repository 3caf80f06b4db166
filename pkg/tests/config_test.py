from __future__ import annotations

from pathlib import Path

import pytest
from pytest_subtests import SubTests

from qgroups.config import CACHE_ENV, RunConfig
from qgroups.errors import InvalidRootOfUnity, RootSystemError
from qgroups.random import random, random_prefix, random_word, reseed
from qgroups.uqcore import QuantumAlgebra


def test_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(CACHE_ENV, raising=False)
    config = RunConfig()
    assert (config.type_label, config.ell, config.degree_bound) == ("A2", 0, 8)
    assert config.suites == []
    assert config.output_format == "text"
    assert config.cache_dir is None
    assert config.generic
    assert config.cartan.rank == 2
    assert config.rref_method == "FF"
    assert QuantumAlgebra(config.cartan).rref_method == "FF"


def test_cache_dir_from_environment(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    assert RunConfig().cache_dir == tmp_path


def test_root_of_unity_guard(subtests: SubTests) -> None:
    for label, ell in (("A1", 1), ("A1", 2), ("B2", 4), ("C3", 4), ("G2", 3), ("G2", 6), ("G2", 8), ("A2", -1)):
        with subtests.test(f"{label} ℓ={ell}"):
            with pytest.raises(InvalidRootOfUnity):
                RunConfig(type_label=label, ell=ell).validate()
    for label, ell in (("A1", 3), ("A2", 4), ("B2", 5), ("B2", 8), ("G2", 4), ("G2", 5)):
        with subtests.test(f"{label} ℓ={ell}"):
            assert RunConfig(type_label=label, ell=ell).validate().ell == ell


def test_invalid_settings() -> None:
    with pytest.raises(ValueError):
        RunConfig(degree_bound=0).validate()
    with pytest.raises(ValueError):
        RunConfig(ell=3, rref_method="CD").validate()
    assert RunConfig(rref_method="CD").validate().rref_method == "CD"
    with pytest.raises(RootSystemError):
        RunConfig(type_label="Z2").validate()


def test_reseed() -> None:
    reseed(3)
    first = [random.random() for _ in range(3)]
    reseed(3)
    assert [random.random() for _ in range(3)] == first


def test_random_words() -> None:
    reseed(7)
    word = random_word(3, 10)
    assert len(word) == 10
    assert set(word) <= {1, 2, 3}
    assert random_word(2, 0) == ()
    prefix = random_prefix(word)
    assert prefix and word[: len(prefix)] == prefix
