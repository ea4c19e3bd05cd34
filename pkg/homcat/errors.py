from __future__ import annotations


class HomcatError(Exception):
    """Base class for every error raised by the library."""

    exit_code = 2

    def __init__(self, message: str, witness: object | None = None):
        super().__init__(message)
        self.message = message
        self.witness = witness


class StructuralError(HomcatError):
    """Malformed input tables, ill-defined constructions, infinite carriers."""

    exit_code = 2


class TreeParseError(StructuralError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class PreconditionError(HomcatError):
    exit_code = 2


class InvariantViolation(HomcatError):
    """The library's own output broke an invariant it promises."""

    exit_code = 3


class BudgetExceeded(HomcatError):
    exit_code = 4
