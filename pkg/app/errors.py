"""
Exception hierarchy for the incidence-biclique toolkit.

Models raise these; controllers translate them into CLI exit codes.
"""
from typing import Any, Optional


class BicliqueError(Exception):
    """Base class for every error raised by the toolkit."""


class DimensionMismatchError(BicliqueError, ValueError):
    """Objects live in different ambient spaces, or the dimension is unsupported."""


class EmptyInputError(BicliqueError, ValueError):
    """An operation that needs at least one object received none."""


class DuplicateObjectError(BicliqueError, ValueError):
    """A configuration holds the same point or hyperplane twice."""


class InvalidArgumentError(BicliqueError, ValueError):
    """A numeric argument is outside the range an operation accepts."""


class InfeasibleSpecError(BicliqueError, ValueError):
    """A generator spec asks for something that cannot be realised."""


class ConfigParseError(BicliqueError, ValueError):
    """A configuration document is malformed."""


class CapExceededError(BicliqueError):
    """A configured work cap was hit."""


class OracleCapExceededError(CapExceededError):
    def __init__(self, subsets: int, cap: int):
        super().__init__(f"oracle refused: {subsets} subsets exceed the cap of {cap}")
        self.subsets = subsets
        self.cap = cap


class RetryCapExceededError(CapExceededError):
    def __init__(self, attempts: int, seed: int):
        super().__init__(f"generic projection degenerate after {attempts} draws (seed {seed})")
        self.attempts = attempts
        self.seed = seed


class ExtractionAbortedError(CapExceededError):
    """A cap was hit inside the extraction pipeline; carries the partial trace."""

    def __init__(self, detail: str, trace: Optional[Any] = None):
        super().__init__(detail)
        self.trace = trace


class StorageError(BicliqueError, OSError):
    """Reading or writing a file failed."""
