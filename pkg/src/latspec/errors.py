"""Exception hierarchy shared by every latspec module."""

from __future__ import annotations


class LatspecError(Exception):
    """Base class for all latspec errors."""


class ExprSyntaxError(LatspecError, ValueError):
    """Malformed expression text.

    ``offset`` is the 1-based character position where parsing failed;
    a failure at end of input reports ``len(text) + 1``.
    """

    def __init__(self, message: str, offset: int, text: str = "") -> None:
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at offset {offset}")


class UnknownIdentifier(ExprSyntaxError):
    def __init__(self, name: str, offset: int, text: str = "") -> None:
        self.name = name
        super().__init__(f"unknown identifier {name!r}", offset, text)


class DomainError(LatspecError, ArithmeticError):
    """Evaluation left the domain of an operation (x/0, log(0), overflow)."""


class SymbolValidationError(LatspecError, ValueError):
    """An atomic symbol violates its invariants."""


class EmptySetError(LatspecError, ValueError):
    """A quantity that needs a non-empty spectral set received an empty one."""


class NotDecomposable(LatspecError, ValueError):
    """The atomic part is not compact, so no compact/non-atomic split exists."""


class BudgetExceedsSamples(LatspecError, ValueError):
    """Removal budget is not smaller than the number of samples."""


class SpecFileError(LatspecError, ValueError):
    """An operator spec document failed to decode or validate."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 offset: int | None = None) -> None:
        self.line = line
        self.column = column
        self.offset = offset
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if offset is not None:
            where.append(f"offset {offset}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)
