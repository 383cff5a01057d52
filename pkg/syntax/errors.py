"""
Exception hierarchy for the matrix prover.
Every package raises subclasses of ProverError so the CLI can map them to SZS statuses.
"""

from typing import Optional


class ProverError(Exception):
    """Base class for all prover errors."""


class InputError(ProverError):
    """The user input cannot be turned into a problem."""


class ParseError(InputError):
    """Syntax error in a TPTP problem, with a source location."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{location}")


class ArityClashError(InputError):
    """The same symbol is used with two different arities."""

    def __init__(self, symbol: str, first: int, second: int):
        self.symbol = symbol
        self.arities = (first, second)
        super().__init__(f"Symbol {symbol!r} used with arity {first} and {second}")


class MissingConjectureError(InputError):
    """The problem contains no conjecture."""


class DuplicateNameError(InputError):
    """Two annotated formulas share a name."""


class ResourceBoundError(ProverError):
    """A configured resource bound was hit. Signals a bound, never invalidity."""


class InternalCheckError(ProverError):
    """One of the prover's own checkers rejected an artifact the prover produced."""
