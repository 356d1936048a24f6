"""
Pair selection policies for Procedure X.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from pivotal.data.utils import check_permutation


class PolicyKind(Enum):
    IN_ORDER = "in-order"
    RANDOM_PAIR = "random-pair"
    CUSTOM_ORDER = "custom-order"


@dataclass(frozen=True)
class PairPolicy:
    """
    Chooses the active pair at every step.

    In-order policies always pair the two minimal undecided indices under
    ``order``; the random policy draws a uniformly random undecided pair.

    Attributes:
        kind: The policy variant.
        order: The permutation used by the custom-order variant.
    """

    kind: PolicyKind = PolicyKind.IN_ORDER
    order: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if self.kind is PolicyKind.CUSTOM_ORDER:
            if self.order is None:
                raise ValueError("custom-order policy requires an order")
            object.__setattr__(
                self, "order", check_permutation(self.order, len(self.order))
            )
        elif self.order is not None:
            raise ValueError(f"{self.kind.value} policy takes no order")

    @staticmethod
    def in_order() -> "PairPolicy":
        return PairPolicy(PolicyKind.IN_ORDER)

    @staticmethod
    def random_pair() -> "PairPolicy":
        return PairPolicy(PolicyKind.RANDOM_PAIR)

    @staticmethod
    def custom(order: Sequence[int]) -> "PairPolicy":
        return PairPolicy(PolicyKind.CUSTOM_ORDER, tuple(order))

    @property
    def deterministic(self) -> bool:
        return self.kind is not PolicyKind.RANDOM_PAIR

    def resolve_order(self, n: int) -> tuple[int, ...]:
        """
        Returns the order an in-order run follows on a population of size n.
        """
        if self.kind is PolicyKind.RANDOM_PAIR:
            raise ValueError("random-pair policy has no fixed order")
        if self.order is None:
            return tuple(range(n))
        return check_permutation(self.order, n)
