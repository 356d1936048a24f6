"""
Defines the relative weight vector of a population and its validation.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

from pivotal.config import get_settings
from pivotal.errors import (
    DomainError,
    IndexOutOfRange,
    LengthBelowK,
    NonPositiveTotal,
    WeightTooLarge,
)


@dataclass(frozen=True)
class WeightVector:
    """
    Relative weights w¹..wⁿ of a population together with the sample size k.

    Attributes:
        weights: The relative weights, summing to 1, each at most 1/k.
        k: The sample size.
        ids: Optional element labels, one per weight.
    """

    weights: tuple[float, ...]
    k: int
    ids: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        settings = get_settings()
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise DomainError(f"k must be a positive integer, got {self.k!r}")
        if len(self.weights) < self.k:
            raise LengthBelowK(
                f"population of size {len(self.weights)} is smaller than k={self.k}"
            )
        if self.ids is not None:
            if len(self.ids) != len(self.weights):
                raise DomainError(
                    f"{len(self.ids)} ids given for {len(self.weights)} weights"
                )
            if len(set(self.ids)) != len(self.ids):
                raise DomainError("element ids must be unique")

        limit = 1.0 / self.k + settings.bound_tolerance
        for index, weight in enumerate(self.weights):
            if not math.isfinite(weight) or weight < 0:
                raise DomainError(f"weight at index {index} is not a nonnegative real")
            if weight > limit:
                raise WeightTooLarge(
                    f"weight {weight!r} at index {index} exceeds 1/k = {1.0 / self.k!r}",
                    index=index,
                )

        total = math.fsum(self.weights)
        if abs(total - 1.0) > settings.sum_tolerance:
            raise DomainError(f"weights sum to {total!r}, expected 1")

    @property
    def n(self) -> int:
        return len(self.weights)

    def label(self, index: int) -> str:
        """
        Returns the label of an element: its id when ids are present, else its index.
        """
        if self.ids is not None:
            return self.ids[index]
        return str(index)

    def index_of(self, label: str) -> int:
        """
        Looks up the zero-based index of an element id.

        Args:
            label: The id of the element.

        Returns: The index of the element.
        """
        if self.ids is None:
            raise IndexOutOfRange(f"no ids attached, cannot resolve {label!r}")
        try:
            return self.ids.index(label)
        except ValueError:
            raise IndexOutOfRange(f"unknown element id {label!r}") from None


def validate_weights(
    raw: Sequence[float],
    k: int,
    normalize: bool = False,
    ids: Optional[Sequence[str]] = None,
) -> WeightVector:
    """
    Validates raw weights and builds a WeightVector.

    Args:
        raw: Nonnegative weights, one per element.
        k: The sample size.
        normalize: Divide the weights by their sum before validating.
        ids: Optional element labels.

    Returns: The validated weight vector.
    """
    values = [float(value) for value in raw]
    if len(values) == 0:
        raise LengthBelowK(f"empty population, k={k}")
    for index, value in enumerate(values):
        if not math.isfinite(value) or value < 0:
            raise DomainError(f"weight at index {index} is not a nonnegative real")

    total = math.fsum(values)
    if total <= 0:
        raise NonPositiveTotal("all weights are zero")
    if normalize:
        values = [value / total for value in values]

    return WeightVector(
        weights=tuple(values),
        k=k,
        ids=tuple(str(i) for i in ids) if ids is not None else None,
    )
