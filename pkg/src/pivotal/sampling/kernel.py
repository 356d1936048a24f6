"""
The pivotal step kernel and its collapsed form for a whole round.

A step takes two undecided coordinates 0 < xⁱ, xʲ < 1 and moves weight between
them so that at least one becomes 0 or 1 while both keep their expectation:

- transfer (xⁱ + xʲ < 1): one of them absorbs the other's weight,
  i with probability xⁱ/(xⁱ + xʲ);
- saturate (xⁱ + xʲ ≥ 1): one of them is raised to 1 and the other keeps
  xⁱ + xʲ − 1, i with probability (1 − xʲ)/(2 − xⁱ − xʲ).

The first branch of each case is the one in which i gains; a variate u picks it
when u is below its probability.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

from pivotal.config import get_settings
from pivotal.data.types.state import snap
from pivotal.data.types.trace import StepCase
from pivotal.errors import DomainError


@dataclass(frozen=True)
class StepOutcome:
    """
    One branch of a pivotal step.

    Attributes:
        new_xi: xⁱ after the step.
        new_xj: xʲ after the step.
        case_tag: Transfer or saturate.
        branch_prob: Probability of this branch.
    """

    new_xi: float
    new_xj: float
    case_tag: StepCase
    branch_prob: float


@dataclass(frozen=True)
class RoundOutcome:
    """
    One outcome of a collapsed round over prefix weights x¹..xᵗ and the next weight.

    Attributes:
        winner: Zero-based position in the prefix of the coordinate that keeps weight.
        winner_saturates: Whether the winner ends at 1 (else the next coordinate does).
        residual: ξ + xᵗ⁺¹ − 1, the weight left on the coordinate that does not saturate.
        probability: Probability of this outcome.
    """

    winner: int
    winner_saturates: bool
    residual: float
    probability: float


def _check_undecided(name: str, value: float) -> None:
    if not 0.0 < value < 1.0:
        raise DomainError(f"{name} = {value!r} is decided; pivotal steps need 0 < {name} < 1")


def _check_variate(u: float) -> None:
    if not 0.0 <= u < 1.0:
        raise DomainError(f"variate u = {u!r} is outside [0, 1)")


def step_branches(
    xi: float, xj: float, snap_tolerance: Optional[float] = None
) -> tuple[StepOutcome, StepOutcome]:
    """
    Returns both branches of the pivotal step on (xⁱ, xʲ), the first one being
    the branch in which i gains.

    Args:
        xi: The undecided weight of i.
        xj: The undecided weight of j.
        snap_tolerance: Overrides the configured snap tolerance.

    Returns: The two branches; their probabilities add up to 1.
    """
    _check_undecided("xi", xi)
    _check_undecided("xj", xj)
    total = xi + xj
    if total < 1.0:
        merged = snap(total, snap_tolerance)
        return (
            StepOutcome(merged, 0.0, StepCase.TRANSFER, xi / total),
            StepOutcome(0.0, merged, StepCase.TRANSFER, xj / total),
        )
    residual = snap(total - 1.0, snap_tolerance)
    spread = 2.0 - total
    return (
        StepOutcome(1.0, residual, StepCase.SATURATE, (1.0 - xj) / spread),
        StepOutcome(residual, 1.0, StepCase.SATURATE, (1.0 - xi) / spread),
    )


def pivotal_step(
    xi: float, xj: float, u: float, snap_tolerance: Optional[float] = None
) -> StepOutcome:
    """
    Carries out one pivotal step, taking the first branch when u is below its probability.
    """
    _check_variate(u)
    return select_branch(step_branches(xi, xj, snap_tolerance), u)


def select_branch(branches: Sequence[StepOutcome], u: float) -> StepOutcome:
    if u < branches[0].branch_prob:
        return branches[0]
    return branches[1]


def step_variance(
    xi: float,
    xj: float,
    branches: Sequence[StepOutcome],
    i_tracked: bool,
    j_tracked: bool,
) -> tuple[float, float]:
    """
    Conditional variances of one step for a tracked subset A.

    Returns: (Var of the change in x^A, Σ over tracked active coordinates of
        the variance of their own change).
    """
    variance = 0.0
    coordinate_variance = 0.0
    for branch in branches:
        di = branch.new_xi - xi
        dj = branch.new_xj - xj
        change = (di if i_tracked else 0.0) + (dj if j_tracked else 0.0)
        variance += branch.branch_prob * change * change
        if i_tracked:
            coordinate_variance += branch.branch_prob * di * di
        if j_tracked:
            coordinate_variance += branch.branch_prob * dj * dj
    return variance, coordinate_variance


def closes_round(
    xi_sum: float, next_weight: float, snap_tolerance: Optional[float] = None
) -> bool:
    """
    Whether a prefix of sum ξ followed by ``next_weight`` reaches 1.

    A sum short of 1 by no more than the snap tolerance closes the round, the
    same way a pivotal transfer snaps its merged weight to 1.
    """
    if snap_tolerance is None:
        snap_tolerance = get_settings().snap_tolerance
    return xi_sum + next_weight >= 1.0 - snap_tolerance


def _round_setup(
    prefix: Sequence[float], next_weight: float, snap_tolerance: Optional[float]
) -> tuple[float, float, float]:
    if len(prefix) == 0:
        raise DomainError("a round needs at least one prefix weight")
    for position, value in enumerate(prefix):
        _check_undecided(f"prefix[{position}]", value)
    _check_undecided("next", next_weight)
    xi_sum = math.fsum(prefix)
    if xi_sum >= 1.0:
        raise DomainError(f"prefix weights sum to {xi_sum!r}; a round prefix must stay below 1")
    if not closes_round(xi_sum, next_weight, snap_tolerance):
        raise DomainError(
            f"prefix sum {xi_sum!r} plus next weight {next_weight!r} is below 1; the round is not closed"
        )
    spread = 2.0 - xi_sum - next_weight
    return xi_sum, (1.0 - next_weight) / spread, (1.0 - xi_sum) / spread


def round_outcomes(
    prefix: Sequence[float],
    next_weight: float,
    snap_tolerance: Optional[float] = None,
) -> list[RoundOutcome]:
    """
    Returns the full distribution of a round with prefix weights x¹..xᵗ (ξ = Σ < 1)
    and next weight xᵗ⁺¹ (ξ + xᵗ⁺¹ ≥ 1).

    The winner r of the prefix is chosen proportionally to xʳ; it then saturates
    with probability (1 − xᵗ⁺¹)/(2 − ξ − xᵗ⁺¹), otherwise the next coordinate does.
    """
    xi_sum, winner_saturates, next_saturates = _round_setup(prefix, next_weight, snap_tolerance)
    residual = snap(max(xi_sum + next_weight - 1.0, 0.0), snap_tolerance)
    outcomes = []
    for position, value in enumerate(prefix):
        share = value / xi_sum
        outcomes.append(RoundOutcome(position, True, residual, share * winner_saturates))
        outcomes.append(RoundOutcome(position, False, residual, share * next_saturates))
    return outcomes


def round_step(
    prefix: Sequence[float],
    next_weight: float,
    u: float,
    snap_tolerance: Optional[float] = None,
) -> RoundOutcome:
    """
    Resolves a whole round with a single variate u.

    u·ξ picks the winner along the cumulative prefix weights; the position of u·ξ
    inside the winner's slot is reused to settle the winner against the next
    coordinate.
    """
    _check_variate(u)
    xi_sum, winner_saturates, next_saturates = _round_setup(prefix, next_weight, snap_tolerance)
    residual = snap(max(xi_sum + next_weight - 1.0, 0.0), snap_tolerance)

    target = u * xi_sum
    cumulative = 0.0
    winner = len(prefix) - 1
    for position, value in enumerate(prefix):
        if target < cumulative + value:
            winner = position
            break
        cumulative += value
    inner = min(max((target - cumulative) / prefix[winner], 0.0), math.nextafter(1.0, 0.0))

    share = prefix[winner] / xi_sum
    if inner < winner_saturates:
        return RoundOutcome(winner, True, residual, share * winner_saturates)
    return RoundOutcome(winner, False, residual, share * next_saturates)


def round_variance(
    prefix: Sequence[float],
    next_weight: float,
    tracked: Sequence[bool],
    next_tracked: bool,
    outcomes: Optional[Sequence[RoundOutcome]] = None,
) -> float:
    """
    Conditional variance of the change in x^A over one collapsed round.

    Args:
        prefix: The prefix weights of the round.
        next_weight: The weight closing the round.
        tracked: Per prefix position, whether it belongs to A.
        next_tracked: Whether the closing coordinate belongs to A.
        outcomes: The round distribution, when already computed.

    Returns: The variance.
    """
    if outcomes is None:
        outcomes = round_outcomes(prefix, next_weight)
    before = math.fsum(value for value, member in zip(prefix, tracked) if member)
    if next_tracked:
        before += next_weight
    variance = 0.0
    for outcome in outcomes:
        winner_value = 1.0 if outcome.winner_saturates else outcome.residual
        next_value = outcome.residual if outcome.winner_saturates else 1.0
        after = (winner_value if tracked[outcome.winner] else 0.0) + (
            next_value if next_tracked else 0.0
        )
        variance += outcome.probability * (after - before) ** 2
    return variance


def draw_variance(values: Sequence[float], tracked: Sequence[bool]) -> float:
    """
    Conditional variance of the change in x^A when one of ``values`` is raised
    to 1 with probability proportional to its weight and the others drop to 0.
    """
    total = math.fsum(values)
    before = math.fsum(value for value, member in zip(values, tracked) if member)
    return math.fsum(
        (value / total) * ((1.0 if member else 0.0) - before) ** 2
        for value, member in zip(values, tracked)
    )
