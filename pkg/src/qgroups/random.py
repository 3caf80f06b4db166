"""Shared generator for sampled checks, reseeded by pytest-randomly and by ``--seed``."""

from random import Random
from typing import Any

from .types import Word

random = Random()


def reseed(new_seed: Any) -> None:
    random.seed(new_seed)


def random_word(rank: int, length: int) -> Word:
    """Uniform word of ``length`` letters in ``1..rank``, not necessarily reduced."""
    return tuple(random.randint(1, rank) for _ in range(length))


def random_prefix(word: Word) -> Word:
    """Non-empty prefix of ``word``."""
    return word[: random.randint(1, len(word))]
