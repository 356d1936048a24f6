"""
Defines the scaled state x ∈ Δ = {x ∈ [0,1]ⁿ : Σx = k} evolved by the samplers.
"""

import math
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Optional

from pivotal.config import get_settings
from pivotal.data.types.weights import WeightVector
from pivotal.errors import DomainError


def snap(value: float, tolerance: Optional[float] = None) -> float:
    """
    Snaps a coordinate lying within ``tolerance`` of 0 or 1 to exactly 0 or 1.
    """
    if tolerance is None:
        tolerance = get_settings().snap_tolerance
    if abs(value) <= tolerance:
        return 0.0
    if abs(value - 1.0) <= tolerance:
        return 1.0
    return value


def is_decided(value: float) -> bool:
    return value == 0.0 or value == 1.0


@dataclass(frozen=True)
class ScaledState:
    """
    A point of Δ: weights in [0,1] adding up to the sample size k.

    Attributes:
        x: The coordinates, each in [0,1].
        k: The sample size, equal to Σx up to the sum tolerance.
    """

    x: tuple[float, ...]
    k: int

    def __post_init__(self) -> None:
        settings = get_settings()
        for index, value in enumerate(self.x):
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"coordinate {index} = {value!r} is outside [0,1]")
        total = math.fsum(self.x)
        if abs(total - self.k) > settings.sum_tolerance:
            raise DomainError(f"coordinates sum to {total!r}, expected k={self.k}")

    @staticmethod
    def from_values(
        values: Iterable[float],
        k: Optional[int] = None,
        snap_tolerance: Optional[float] = None,
    ) -> "ScaledState":
        """
        Snaps raw coordinates and builds a state, inferring k from their sum.

        Args:
            values: The raw coordinates.
            k: The sample size; the rounded sum of the coordinates when omitted.
            snap_tolerance: Overrides the configured snap tolerance.

        Returns: The validated state.
        """
        snapped = tuple(snap(float(value), snap_tolerance) for value in values)
        if k is None:
            k = int(round(math.fsum(snapped)))
        return ScaledState(x=snapped, k=k)

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def undecided(self) -> tuple[int, ...]:
        return tuple(i for i, value in enumerate(self.x) if not is_decided(value))

    @property
    def certain(self) -> frozenset[int]:
        """Indices starting at x = 1, which are in every sample."""
        return frozenset(i for i, value in enumerate(self.x) if value == 1.0)

    @property
    def expected_rounds(self) -> int:
        return self.k - len(self.certain)

    def subset_sum(self, members: Iterable[int]) -> float:
        return math.fsum(self.x[i] for i in members)


def scale_weights(wv: WeightVector) -> ScaledState:
    """
    Rescales relative weights to x₀ = k·w.

    The weights are divided by their sum first, so Σx = k even when Σw is off 1
    by the accepted tolerance. Coordinates pushed above 1 by that tolerance are
    capped at 1 and their excess is spread over the uncapped ones. No coordinate
    is snapped, so x₀/k recovers w up to rounding.

    Args:
        wv: A validated weight vector.

    Returns: The initial state of every procedure.
    """
    total = math.fsum(wv.weights)
    x = [wv.k * weight / total for weight in wv.weights]
    while any(value > 1.0 for value in x):
        x = [min(value, 1.0) for value in x]
        free = [i for i, value in enumerate(x) if value < 1.0]
        rest = math.fsum(x[i] for i in free)
        if rest == 0.0:
            break
        scale = (wv.k - (len(x) - len(free))) / rest
        for i in free:
            x[i] *= scale
    return ScaledState(x=tuple(x), k=wv.k)


def unscale(state: ScaledState) -> tuple[float, ...]:
    return tuple(value / state.k for value in state.x)

