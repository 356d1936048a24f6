"""
Exact distribution of a sampler by enumerating every branch of its run.

Each pivotal step has two branches and each collapsed round 2·t, so an
in-order run on n elements has at most 2^{n−1} leaves. The traversal uses the
same step and round kernels as the samplers.
"""

import logging
import math
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, Optional

from pivotal.config import get_settings
from pivotal.data.types.procedure import Procedure
from pivotal.data.types.state import ScaledState, is_decided
from pivotal.data.types.subset import SubsetSpec
from pivotal.errors import DomainError, TooLarge
from pivotal.sampling.kernel import (
    closes_round,
    draw_variance,
    round_outcomes,
    round_variance,
    step_branches,
    step_variance,
)
from pivotal.sampling.policy import PairPolicy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExactDistribution:
    """
    The exact law of one procedure on one starting state, seen through a subset A.

    Attributes:
        procedure: The enumerated procedure.
        subset: The subset A.
        k: The sample size.
        inclusion_probs: P[i ∈ S] per index.
        subset_pmf: P[|S ∩ A| = j] for j = 0..k.
        sample_pmf: P[S = s] per sample s.
        leaf_count: Number of leaves of the branching tree.
        expected_vt: E[V_T], the expected accumulated conditional variance of x^A.
        max_path_vt: The largest V_T over all paths.
        round_counts: Probability of each number of rounds.
        max_round_movement: The largest Σ_i max(0, change of xⁱ) over a single round.
        subadditivity_excess: The largest excess of a step's conditional variance of x^A
            over the sum of the coordinate variances; None for collapsed rounds.
    """

    procedure: Procedure
    subset: SubsetSpec
    k: int
    inclusion_probs: tuple[float, ...]
    subset_pmf: tuple[float, ...]
    sample_pmf: dict[frozenset[int], float] = field(repr=False)
    leaf_count: int
    expected_vt: float
    max_path_vt: float
    round_counts: dict[int, float]
    max_round_movement: float
    subadditivity_excess: Optional[float]

    def inclusion_error(self, x0: ScaledState) -> float:
        return max(abs(p - x) for p, x in zip(self.inclusion_probs, x0.x))

    @property
    def pmf_total(self) -> float:
        return math.fsum(self.subset_pmf)

    def to_dict(self) -> dict[str, Any]:
        return {
            "procedure": self.procedure.value,
            "inclusion_probs": list(self.inclusion_probs),
            "subset_pmf": list(self.subset_pmf),
            "leaf_count": self.leaf_count,
            "expected_vt": self.expected_vt,
            "max_path_vt": self.max_path_vt,
            "round_counts": {str(r): p for r, p in sorted(self.round_counts.items())},
            "max_round_movement": self.max_round_movement,
            "subadditivity_excess": self.subadditivity_excess,
        }


@dataclass
class _Path:
    """Running totals along one root-to-leaf path."""

    x: tuple[float, ...]
    probability: float = 1.0
    vt: float = 0.0
    rounds: int = 0
    round_start: tuple[float, ...] = ()
    max_movement: float = 0.0
    excess: float = -math.inf

    def close_round(self, x: tuple[float, ...]) -> tuple[int, tuple[float, ...], float]:
        movement = math.fsum(max(0.0, a - b) for a, b in zip(x, self.round_start))
        return self.rounds + 1, x, max(self.max_movement, movement)


class _Accumulator:
    def __init__(self, n: int, k: int, members: frozenset[int]) -> None:
        self.n = n
        self.k = k
        self.members = members
        self.inclusion: list[list[float]] = [[] for _ in range(n)]
        self.subset_pmf: list[list[float]] = [[] for _ in range(k + 1)]
        self.sample_pmf: defaultdict[frozenset[int], list[float]] = defaultdict(list)
        self.weighted_vt: list[float] = []
        self.round_counts: defaultdict[int, list[float]] = defaultdict(list)
        self.leaf_count = 0
        self.max_path_vt = 0.0
        self.max_movement = 0.0
        self.excess = -math.inf

    def leaf(self, path: _Path) -> None:
        sample = frozenset(i for i, value in enumerate(path.x) if value == 1.0)
        if len(sample) != self.k:
            raise DomainError(f"enumerated leaf selects {len(sample)} elements, expected k={self.k}")
        p = path.probability
        for i in sample:
            self.inclusion[i].append(p)
        self.subset_pmf[len(sample & self.members)].append(p)
        self.sample_pmf[sample].append(p)
        self.weighted_vt.append(p * path.vt)
        self.round_counts[path.rounds].append(p)
        self.leaf_count += 1
        self.max_path_vt = max(self.max_path_vt, path.vt)
        self.max_movement = max(self.max_movement, path.max_movement)
        self.excess = max(self.excess, path.excess)

    def build(
        self, procedure: Procedure, subset: SubsetSpec, collapsed: bool
    ) -> ExactDistribution:
        return ExactDistribution(
            procedure=procedure,
            subset=subset,
            k=self.k,
            inclusion_probs=tuple(math.fsum(ps) for ps in self.inclusion),
            subset_pmf=tuple(math.fsum(ps) for ps in self.subset_pmf),
            sample_pmf={s: math.fsum(ps) for s, ps in self.sample_pmf.items()},
            leaf_count=self.leaf_count,
            expected_vt=math.fsum(self.weighted_vt),
            max_path_vt=self.max_path_vt,
            round_counts={r: math.fsum(ps) for r, ps in self.round_counts.items()},
            max_round_movement=self.max_movement,
            subadditivity_excess=None if collapsed else max(0.0, self.excess),
        )


def _settle_leaf(path: _Path, leftover: Sequence[int], acc: _Accumulator) -> None:
    """
    Emits the leaves of a path whose last undecided coordinates carry only
    floating-point drift.
    """
    if not leftover:
        acc.leaf(path)
        return
    sum_tolerance = get_settings().sum_tolerance
    total = math.fsum(path.x[i] for i in leftover)
    if abs(total) <= sum_tolerance:
        x = list(path.x)
        for i in leftover:
            x[i] = 0.0
        path.x = tuple(x)
        acc.leaf(path)
        return
    if abs(total - 1.0) > sum_tolerance:
        raise DomainError(f"undecided weight {total!r} left on {list(leftover)}")
    variance = draw_variance(
        [path.x[i] for i in leftover], [i in acc.members for i in leftover]
    )
    for winner in leftover:
        x = list(path.x)
        for i in leftover:
            x[i] = 1.0 if i == winner else 0.0
        closed = tuple(x)
        rounds, start, movement = path.close_round(closed)
        acc.leaf(
            _Path(
                x=closed,
                probability=path.probability * path.x[winner] / total,
                vt=path.vt + variance,
                rounds=rounds,
                round_start=start,
                max_movement=movement,
                excess=path.excess,
            )
        )


def _walk_steps(
    path: _Path,
    order: tuple[int, ...],
    position: int,
    holder: Optional[int],
    acc: _Accumulator,
) -> None:
    x = path.x
    while position < len(order) and (holder is None or is_decided(x[order[position]])):
        index = order[position]
        if holder is None and not is_decided(x[index]):
            holder = index
        position += 1
    if position == len(order):
        _settle_leaf(path, [holder] if holder is not None else [], acc)
        return

    i, j = holder, order[position]
    assert i is not None
    branches = step_branches(x[i], x[j])
    variance, coordinate_variance = step_variance(
        x[i], x[j], branches, i in acc.members, j in acc.members
    )
    excess = max(path.excess, variance - coordinate_variance)
    for branch in branches:
        child = list(x)
        child[i], child[j] = branch.new_xi, branch.new_xj
        after = tuple(child)
        rounds, start, movement = path.rounds, path.round_start, path.max_movement
        if branch.new_xi == 1.0 or branch.new_xj == 1.0:
            rounds, start, movement = path.close_round(after)
        if not is_decided(after[i]):
            next_holder: Optional[int] = i
        elif not is_decided(after[j]):
            next_holder = j
        else:
            next_holder = None
        _walk_steps(
            _Path(
                x=after,
                probability=path.probability * branch.branch_prob,
                vt=path.vt + variance,
                rounds=rounds,
                round_start=start,
                max_movement=movement,
                excess=excess,
            ),
            order,
            position + 1,
            next_holder,
            acc,
        )


def _walk_rounds(
    path: _Path,
    order: tuple[int, ...],
    position: int,
    prefix: list[int],
    acc: _Accumulator,
) -> None:
    x = path.x
    prefix = list(prefix)
    while position < len(order):
        index = order[position]
        if is_decided(x[index]):
            position += 1
            continue
        if not prefix or not closes_round(math.fsum(x[p] for p in prefix), x[index]):
            prefix.append(index)
            position += 1
            continue
        break
    if position == len(order):
        _settle_leaf(path, prefix, acc)
        return

    closing = order[position]
    prefix_values = [x[p] for p in prefix]
    outcomes = round_outcomes(prefix_values, x[closing])
    variance = round_variance(
        prefix_values,
        x[closing],
        [p in acc.members for p in prefix],
        closing in acc.members,
        outcomes,
    )
    for outcome in outcomes:
        winner = prefix[outcome.winner]
        child = list(x)
        for p in prefix:
            child[p] = 0.0
        if outcome.winner_saturates:
            child[winner], child[closing] = 1.0, outcome.residual
        else:
            child[winner], child[closing] = outcome.residual, 1.0
        after = tuple(child)
        rounds, start, movement = path.close_round(after)
        _walk_rounds(
            _Path(
                x=after,
                probability=path.probability * outcome.probability,
                vt=path.vt + variance,
                rounds=rounds,
                round_start=start,
                max_movement=movement,
            ),
            order,
            position + 1,
            [p for p in (winner, closing) if not is_decided(after[p])],
            acc,
        )


def exact_distribution(
    x0: ScaledState,
    policy: PairPolicy,
    subset: SubsetSpec,
    procedure: Procedure = Procedure.X,
) -> ExactDistribution:
    """
    Enumerates every branch of a run and accumulates exact path probabilities.

    X, X* and X** all follow the order of the policy: the natural order for
    in-order, the given permutation for custom-order.

    Args:
        x0: The starting state.
        policy: An in-order or custom-order pair policy.
        subset: The subset A whose count and variances are tracked.
        procedure: The procedure to enumerate.

    Returns: The exact distribution.
    """
    limit = get_settings().enumeration_limit
    if x0.n > limit:
        raise TooLarge(f"exact enumeration is limited to n ≤ {limit}, got n={x0.n}")
    if not policy.deterministic:
        raise DomainError("exact enumeration needs a deterministic pair policy")
    subset.check_range(x0.n)

    order = policy.resolve_order(x0.n)
    acc = _Accumulator(x0.n, x0.k, subset.members)
    root = _Path(x=x0.x, round_start=x0.x)
    collapsed = procedure is Procedure.X_STAR_STAR
    if collapsed:
        _walk_rounds(root, order, 0, [], acc)
    else:
        _walk_steps(root, order, 0, None, acc)

    distribution = acc.build(procedure, subset, collapsed)
    logger.debug(
        "enumerated %s on n=%d k=%d: %d leaves",
        procedure.value,
        x0.n,
        x0.k,
        distribution.leaf_count,
    )
    return distribution
