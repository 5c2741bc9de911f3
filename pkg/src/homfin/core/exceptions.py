# src/homfin/core/exceptions.py

"""
Exception hierarchy for homfin.

Every error raised on purpose by the engine derives from `HomfinError`, so the
CLI can separate "your input is wrong" from genuine bugs. Errors that point at
a concrete counterexample (a non-associative triple, a generator where a
section fails) carry it in `witness`.
"""

from typing import Any, Optional


class HomfinError(Exception):
    """Base class for all domain errors."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.message = message
        self.witness = witness


class ConfigError(HomfinError):
    pass


class FieldSpecError(HomfinError):
    pass


class AlphabetMismatchError(HomfinError):
    pass


class PresentationError(HomfinError):
    """A presentation that parses but violates the connected graded rules."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class PresentationSyntaxError(PresentationError):
    pass


class TruncationError(HomfinError):
    """A computation needed data above the degree cutoff."""

    def __init__(self, degree: int, cutoff: int):
        super().__init__(f"degree {degree} exceeds the cutoff D = {cutoff}")
        self.degree = degree
        self.cutoff = cutoff


class DegreeMismatchError(HomfinError):
    pass


class BimoduleAxiomError(HomfinError):
    pass


class MonoidTableError(HomfinError):
    pass


class InvolutionError(HomfinError):
    pass


class UnsupportedInputError(HomfinError):
    pass


class RetractionError(HomfinError):
    pass


class RetractivePairError(HomfinError):
    pass


class GeneratingSetError(HomfinError):
    def __init__(self, message: str, missing_dimension: int, witness: Optional[Any] = None):
        super().__init__(message, witness)
        self.missing_dimension = missing_dimension


class NonMinimalResolutionError(HomfinError):
    pass


class ResolutionError(HomfinError):
    pass
