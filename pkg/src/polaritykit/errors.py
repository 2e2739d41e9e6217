"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class PolarityKitError(ValueError):
    """Base class for all package errors."""


class NotAPartialOrder(PolarityKitError):
    pass


class NotALattice(PolarityKitError):
    pass


class NotBounded(PolarityKitError):
    pass


class ArityMismatch(PolarityKitError):
    pass


class BadSize(PolarityKitError):
    pass


class IndexOutOfRange(PolarityKitError, IndexError):
    pass


class NotSeparated(PolarityKitError):
    pass


class SortMismatch(PolarityKitError):
    pass


class NotGalois(PolarityKitError):
    pass


class NotResiduated(PolarityKitError):
    pass


class SectionsNotStable(PolarityKitError):
    pass


class NotClosedElement(PolarityKitError):
    pass


class LemmaPreconditionFailed(PolarityKitError):
    pass


class GuardExceeded(PolarityKitError):
    """An exhaustive check would exceed the configured size guard."""


class GenerationFailed(PolarityKitError):
    pass


class ValidationError(PolarityKitError):
    pass


class ParseError(PolarityKitError):
    def __init__(self, line: int, col: int, message: str) -> None:
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.message = message
