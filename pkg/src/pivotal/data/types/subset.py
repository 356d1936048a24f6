"""
Defines a subset A ⊆ [n] of the population and the quantities α and η built from it.
"""

import math
from collections.abc import Iterable
from dataclasses import dataclass

from pivotal.data.types.weights import WeightVector
from pivotal.errors import IndexOutOfRange


@dataclass(frozen=True)
class SubsetSpec:
    """
    A set of zero-based element indices.

    Attributes:
        members: The indices belonging to the subset.
    """

    members: frozenset[int]

    def __post_init__(self) -> None:
        for index in self.members:
            if index < 0:
                raise IndexOutOfRange(f"negative index {index} in subset", index=index)

    @staticmethod
    def of(indices: Iterable[int]) -> "SubsetSpec":
        return SubsetSpec(frozenset(int(i) for i in indices))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, index: object) -> bool:
        return index in self.members

    def check_range(self, n: int) -> None:
        """
        Raises IndexOutOfRange unless every member lies in [0, n).
        """
        for index in sorted(self.members):
            if index >= n:
                raise IndexOutOfRange(
                    f"index {index} is out of range for a population of size {n}",
                    index=index,
                )

    def sorted(self) -> list[int]:
        return sorted(self.members)


def complement(subset: SubsetSpec, n: int) -> SubsetSpec:
    subset.check_range(n)
    return SubsetSpec(frozenset(range(n)) - subset.members)


def subset_alpha(wv: WeightVector, subset: SubsetSpec) -> float:
    """
    Returns the relative weight α = Σ_{i∈A} wⁱ of the subset.
    """
    subset.check_range(wv.n)
    return math.fsum(wv.weights[i] for i in subset.members)


def eta_exact(wv: WeightVector, subset: SubsetSpec) -> float:
    """
    Returns the variance proxy η = α − k·Σ_{i∈A}(wⁱ)², which lies in [0, α].

    Args:
        wv: The weight vector.
        subset: The subset A.

    Returns: η for A.
    """
    alpha = subset_alpha(wv, subset)
    squares = math.fsum(wv.weights[i] ** 2 for i in subset.members)
    return min(alpha, max(0.0, alpha - wv.k * squares))


def eta_decomposed(wv: WeightVector, subset: SubsetSpec) -> float:
    """
    Returns η through the mean/variance split α − (k/m)α² − k·m·β, where m = |A|
    and β is the variance of the weights over A.
    """
    alpha = subset_alpha(wv, subset)
    m = len(subset)
    if m == 0:
        return 0.0
    mean_square = math.fsum(wv.weights[i] ** 2 for i in subset.members) / m
    beta = mean_square - (alpha / m) ** 2
    eta = alpha - (wv.k / m) * alpha**2 - wv.k * m * beta
    return min(alpha, max(0.0, eta))
