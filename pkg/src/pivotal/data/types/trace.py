"""
Defines the per-step record of a sampler run.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

from pivotal.data.types.subset import SubsetSpec


class StepCase(Enum):
    TRANSFER = "transfer"
    SATURATE = "saturate"


@dataclass(frozen=True)
class TraceStep:
    """
    One pivotal step between the active pair (i, j).

    Attributes:
        t: The 1-based step number.
        i: The first active index (earlier in the order).
        j: The second active index.
        case: Transfer (xⁱ + xʲ < 1) or saturate (xⁱ + xʲ ≥ 1).
        before: (xⁱ, xʲ) before the step.
        after: (xⁱ, xʲ) after the step.
        variance: Conditional variance of the change in x^A, A the tracked subset.
        coordinate_variance: Σ_{i∈A} of the conditional variances of the coordinate changes.
    """

    t: int
    i: int
    j: int
    case: StepCase
    before: tuple[float, float]
    after: tuple[float, float]
    variance: Optional[float] = None
    coordinate_variance: Optional[float] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "t": self.t,
            "pair": [self.i, self.j],
            "case": self.case.value,
            "before": list(self.before),
            "after": list(self.after),
            "variance": self.variance,
            "coordinate_variance": self.coordinate_variance,
        }


@dataclass(frozen=True)
class TrajectoryTrace:
    """
    The trajectory of one run: its steps, the steps closing each round, and the
    weight moved per round.

    Attributes:
        steps: The recorded steps, in order. Empty for the collapsed-round procedure.
        round_boundaries: Step (or round) numbers T₁ < … < T_k at which a coordinate reached 1.
        round_movements: Per round, Σ_i max(0, Z_ℓⁱ − Z_{ℓ−1}ⁱ), the largest |Z_ℓᴬ − Z_{ℓ−1}ᴬ| over all A.
        tracked_subset: The subset whose variances and snapshots are recorded.
        subset_snapshots: Z_ℓᴬ for ℓ = 0..rounds when a subset is tracked.
        round_variances: Conditional variance of Z_ℓᴬ − Z_{ℓ−1}ᴬ per collapsed round.
    """

    steps: tuple[TraceStep, ...] = ()
    round_boundaries: tuple[int, ...] = ()
    round_movements: tuple[float, ...] = ()
    tracked_subset: Optional[SubsetSpec] = None
    subset_snapshots: tuple[float, ...] = ()
    round_variances: tuple[float, ...] = field(default=())

    @property
    def rounds(self) -> int:
        return len(self.round_boundaries)

    @property
    def accumulated_variance(self) -> float:
        """V_T for the tracked subset, summed over steps and collapsed rounds."""
        return math.fsum(
            [*self.round_variances, *(step.variance or 0.0 for step in self.steps)]
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "steps": [step.to_dict() for step in self.steps],
            "round_boundaries": list(self.round_boundaries),
            "round_movements": list(self.round_movements),
            "tracked_subset": (
                self.tracked_subset.sorted() if self.tracked_subset is not None else None
            ),
            "subset_snapshots": list(self.subset_snapshots),
            "accumulated_variance": self.accumulated_variance,
        }
