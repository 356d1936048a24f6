"""
Exceptions raised by the sampling, bounds and verification layers.
"""

from typing import Optional


class PivotalError(Exception):
    def __init__(self, message: str) -> None:
        self.message = message

    def __str__(self) -> str:
        return self.message

    @property
    def name(self) -> str:
        return self.__class__.__name__


class NonPositiveTotal(PivotalError):
    """Raised when a weight vector has no positive entry to normalise by."""


class WeightTooLarge(PivotalError):
    """Raised when a relative weight exceeds 1/k."""

    def __init__(self, message: str, index: int) -> None:
        super().__init__(message)
        self.index = index


class LengthBelowK(PivotalError):
    """Raised when the population is smaller than the sample size."""


class IndexOutOfRange(PivotalError):
    def __init__(self, message: str, index: Optional[int] = None) -> None:
        super().__init__(message)
        self.index = index


class DomainError(PivotalError):
    """Raised when an argument lies outside the domain of an operation."""


class InvalidPermutation(PivotalError):
    pass


class TooLarge(PivotalError):
    """Raised when an exact enumeration would exceed the configured size limit."""


class InvalidDocument(PivotalError):
    """Raised when a weight, subset, order or settings document fails its schema."""


class InvalidFlags(PivotalError):
    pass
