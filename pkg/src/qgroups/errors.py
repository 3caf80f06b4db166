from __future__ import annotations

from dataclasses import dataclass
from typing import Any


class QGroupsError(Exception):
    pass


class RootSystemError(QGroupsError):
    pass


class NotReduced(QGroupsError):
    pass


class NotPrefix(QGroupsError):
    pass


class UnsupportedType(QGroupsError):
    pass


class InvalidRootOfUnity(QGroupsError):
    pass


class PoleError(QGroupsError):
    """A denominator vanishes at the chosen root of unity."""


class SingularNormalization(QGroupsError):
    pass


class DegreeBoundExceeded(QGroupsError):
    pass


class ReductionError(QGroupsError):
    pass


class ConstraintViolation(QGroupsError):
    pass


class UnknownSuite(QGroupsError):
    pass


class CheckSkipped(QGroupsError):
    """Raised inside a check that does not apply to the configured algebra."""


@dataclass
class ParseError(QGroupsError):
    message: str
    column: int

    def __str__(self) -> str:
        return f"{self.message} (at column {self.column})"


@dataclass
class CyclicChecks(QGroupsError):
    dependencies: Any


class CacheFormatError(QGroupsError):
    pass
