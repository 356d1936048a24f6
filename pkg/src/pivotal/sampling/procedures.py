"""
The martingale sampling procedures X, X* and X**.

All three start from x₀ = k·w and stop once every coordinate is 0 or 1; the
sample is {i : xⁱ = 1}. X picks its active pairs through a PairPolicy, X* is X
run in a fixed order, and X** resolves each round of X* with a single variate.
"""

import logging
import math
from collections.abc import Sequence
from typing import Optional

import numpy as np

from pivotal.config import get_settings
from pivotal.data.models import SampleResult
from pivotal.data.types.procedure import Procedure
from pivotal.data.types.state import ScaledState, is_decided
from pivotal.data.types.subset import SubsetSpec
from pivotal.data.types.trace import TraceStep, TrajectoryTrace
from pivotal.data.utils import check_permutation
from pivotal.errors import DomainError
from pivotal.sampling.kernel import (
    StepOutcome,
    closes_round,
    draw_variance,
    round_step,
    round_variance,
    select_branch,
    step_branches,
    step_variance,
)
from pivotal.sampling.policy import PairPolicy
from pivotal.sampling.random_source import RandomSource

logger = logging.getLogger(__name__)


class _TraceRecorder:
    """
    Collects steps, round boundaries, per-round movement and subset snapshots.
    """

    def __init__(self, x0: ScaledState, subset: Optional[SubsetSpec]) -> None:
        self.subset = subset
        self.members = subset.members if subset is not None else frozenset()
        self.steps: list[TraceStep] = []
        self.boundaries: list[int] = []
        self.movements: list[float] = []
        self.round_variances: list[float] = []
        self.round_delta: dict[int, float] = {}
        self.subset_value = x0.subset_sum(self.members)
        self.snapshots: list[float] = [self.subset_value] if subset is not None else []

    def _move(self, index: int, delta: float) -> None:
        self.round_delta[index] = self.round_delta.get(index, 0.0) + delta
        if index in self.members:
            self.subset_value += delta

    def step(
        self,
        t: int,
        i: int,
        j: int,
        before: tuple[float, float],
        outcome: StepOutcome,
        branches: Sequence[StepOutcome],
    ) -> None:
        variance: Optional[float] = None
        coordinate_variance: Optional[float] = None
        if self.subset is not None:
            variance, coordinate_variance = step_variance(
                before[0], before[1], branches, i in self.members, j in self.members
            )
        self.steps.append(
            TraceStep(
                t=t,
                i=i,
                j=j,
                case=outcome.case_tag,
                before=before,
                after=(outcome.new_xi, outcome.new_xj),
                variance=variance,
                coordinate_variance=coordinate_variance,
            )
        )
        self._move(i, outcome.new_xi - before[0])
        self._move(j, outcome.new_xj - before[1])
        if outcome.new_xi == 1.0 or outcome.new_xj == 1.0:
            self.close_round(t)

    def round(self, number: int, changes: dict[int, float], variance: float) -> None:
        for index, delta in changes.items():
            self._move(index, delta)
        if self.subset is not None:
            self.round_variances.append(variance)
        self.close_round(number)

    def close_round(self, boundary: int) -> None:
        self.boundaries.append(boundary)
        self.movements.append(
            math.fsum(delta for delta in self.round_delta.values() if delta > 0)
        )
        self.round_delta.clear()
        if self.subset is not None:
            self.snapshots.append(self.subset_value)

    def build(self) -> TrajectoryTrace:
        return TrajectoryTrace(
            steps=tuple(self.steps),
            round_boundaries=tuple(self.boundaries),
            round_movements=tuple(self.movements),
            tracked_subset=self.subset,
            subset_snapshots=tuple(self.snapshots),
            round_variances=tuple(self.round_variances),
        )


def _close_leftover(
    x: list[float],
    leftover: Sequence[int],
    generator: np.random.Generator,
    sum_tolerance: float,
) -> Optional[int]:
    """
    Decides coordinates left undecided only by floating-point drift.

    Returns: The index raised to 1, if any.
    """
    if len(leftover) == 0:
        return None
    total = math.fsum(x[i] for i in leftover)
    if abs(total) <= sum_tolerance:
        for i in leftover:
            x[i] = 0.0
        return None
    if abs(total - 1.0) <= sum_tolerance:
        target = generator.random() * total
        cumulative = 0.0
        winner = leftover[-1]
        for i in leftover:
            cumulative += x[i]
            if target < cumulative:
                winner = i
                break
        for i in leftover:
            x[i] = 1.0 if i == winner else 0.0
        return winner
    raise DomainError(
        f"undecided weight {total!r} left on {list(leftover)}; the state does not sum to an integer"
    )


def _settle(
    x: list[float],
    leftover: Sequence[int],
    generator: np.random.Generator,
    sum_tolerance: float,
    recorder: Optional[_TraceRecorder],
    boundary: int,
) -> bool:
    """
    Closes drift leftovers and records the extra round when one coordinate was raised.
    """
    before = {i: x[i] for i in leftover}
    if _close_leftover(x, leftover, generator, sum_tolerance) is None:
        return False
    logger.debug("closed floating-point leftover on %s", sorted(before))
    if recorder is not None:
        variance = 0.0
        if recorder.subset is not None:
            variance = draw_variance(
                [before[i] for i in leftover], [i in recorder.members for i in leftover]
            )
        recorder.round(boundary, {i: x[i] - before[i] for i in before}, variance)
    return True


def _finish(
    x: list[float],
    x0: ScaledState,
    rng: RandomSource,
    procedure: Procedure,
    steps: int,
    rounds: int,
    recorder: Optional[_TraceRecorder],
) -> SampleResult:
    sample = frozenset(i for i, value in enumerate(x) if value == 1.0)
    if len(sample) != x0.k:
        raise DomainError(f"run ended with {len(sample)} selected elements, expected k={x0.k}")
    logger.debug(
        "%s run seed=%d stream=%d finished after %d steps and %d rounds",
        procedure.value,
        rng.seed,
        rng.stream_id,
        steps,
        rounds,
    )
    return SampleResult(
        sample=sample,
        seed=rng.seed,
        stream_id=rng.stream_id,
        procedure=procedure,
        steps=steps,
        rounds=rounds,
        trace=recorder.build() if recorder is not None else None,
    )


def _run_in_order(
    x0: ScaledState,
    order: tuple[int, ...],
    rng: RandomSource,
    recorder: Optional[_TraceRecorder],
    procedure: Procedure,
) -> SampleResult:
    settings = get_settings()
    generator = rng.generator()
    x = list(x0.x)
    holder: Optional[int] = None
    steps = 0
    rounds = 0
    for index in order:
        if is_decided(x[index]):
            continue
        if holder is None:
            holder = index
            continue
        i, j = holder, index
        before = (x[i], x[j])
        branches = step_branches(before[0], before[1], settings.snap_tolerance)
        outcome = select_branch(branches, generator.random())
        x[i], x[j] = outcome.new_xi, outcome.new_xj
        steps += 1
        if outcome.new_xi == 1.0 or outcome.new_xj == 1.0:
            rounds += 1
        if recorder is not None:
            recorder.step(steps, i, j, before, outcome, branches)
        if not is_decided(x[i]):
            holder = i
        elif not is_decided(x[j]):
            holder = j
        else:
            holder = None

    leftover = [holder] if holder is not None else []
    if _settle(x, leftover, generator, settings.sum_tolerance, recorder, steps + 1):
        rounds += 1
    return _finish(x, x0, rng, procedure, steps, rounds, recorder)


def _run_random_pair(
    x0: ScaledState, rng: RandomSource, recorder: Optional[_TraceRecorder]
) -> SampleResult:
    settings = get_settings()
    generator = rng.generator()
    x = list(x0.x)
    undecided = list(x0.undecided)
    steps = 0
    rounds = 0
    while len(undecided) >= 2:
        size = len(undecided)
        a = int(generator.integers(size))
        b = int(generator.integers(size - 1))
        if b >= a:
            b += 1
        i, j = sorted((undecided[a], undecided[b]))
        before = (x[i], x[j])
        branches = step_branches(before[0], before[1], settings.snap_tolerance)
        outcome = select_branch(branches, generator.random())
        x[i], x[j] = outcome.new_xi, outcome.new_xj
        steps += 1
        if outcome.new_xi == 1.0 or outcome.new_xj == 1.0:
            rounds += 1
        if recorder is not None:
            recorder.step(steps, i, j, before, outcome, branches)
        for position in sorted((a, b), reverse=True):
            if is_decided(x[undecided[position]]):
                undecided[position] = undecided[-1]
                undecided.pop()

    if _settle(x, undecided, generator, settings.sum_tolerance, recorder, steps + 1):
        rounds += 1
    return _finish(x, x0, rng, Procedure.X, steps, rounds, recorder)


def _recorder(
    x0: ScaledState, trace_subset: Optional[SubsetSpec], trace: bool
) -> Optional[_TraceRecorder]:
    if trace_subset is not None:
        trace_subset.check_range(x0.n)
    if trace_subset is None and not trace:
        return None
    return _TraceRecorder(x0, trace_subset)


def run_procedure_x(
    x0: ScaledState,
    policy: PairPolicy,
    rng: RandomSource,
    trace_subset: Optional[SubsetSpec] = None,
    trace: bool = False,
) -> SampleResult:
    """
    Runs Procedure X: pivotal steps on pairs chosen by ``policy`` until every
    coordinate is decided.

    Args:
        x0: The starting state k·w.
        policy: How the active pair is chosen at each step.
        rng: The random source of the run.
        trace_subset: Records per-step conditional variances for this subset.
        trace: Records the trajectory even without a tracked subset.

    Returns: The sample with step and round counts, and the trace when requested.
    """
    recorder = _recorder(x0, trace_subset, trace)
    if not policy.deterministic:
        return _run_random_pair(x0, rng, recorder)
    return _run_in_order(x0, policy.resolve_order(x0.n), rng, recorder, Procedure.X)


def run_procedure_x_star(
    x0: ScaledState,
    order: Optional[Sequence[int]],
    rng: RandomSource,
    trace_subset: Optional[SubsetSpec] = None,
    trace: bool = False,
) -> SampleResult:
    """
    Runs Procedure X*: the active pair is always the two minimal undecided
    indices under ``order`` (the natural order when None). A round closes each
    time a coordinate reaches 1, so there are k − |{i : x₀ⁱ = 1}| rounds.
    """
    resolved = tuple(range(x0.n)) if order is None else check_permutation(order, x0.n)
    recorder = _recorder(x0, trace_subset, trace)
    return _run_in_order(x0, resolved, rng, recorder, Procedure.X_STAR)


def run_procedure_x_star_star(
    x0: ScaledState,
    order: Optional[Sequence[int]],
    rng: RandomSource,
    trace_subset: Optional[SubsetSpec] = None,
    trace: bool = False,
) -> SampleResult:
    """
    Runs Procedure X**: walks ``order`` collecting undecided weights into a
    prefix while their sum stays below 1; the first weight that brings the sum
    to 1 or more closes the round, which is resolved with one variate.
    """
    resolved = tuple(range(x0.n)) if order is None else check_permutation(order, x0.n)
    recorder = _recorder(x0, trace_subset, trace)
    settings = get_settings()
    generator = rng.generator()
    x = list(x0.x)
    prefix: list[int] = []
    rounds = 0
    for index in resolved:
        if is_decided(x[index]):
            continue
        if not prefix:
            prefix.append(index)
            continue
        prefix_values = [x[p] for p in prefix]
        if not closes_round(math.fsum(prefix_values), x[index], settings.snap_tolerance):
            prefix.append(index)
            continue

        outcome = round_step(
            prefix_values, x[index], generator.random(), settings.snap_tolerance
        )
        winner = prefix[outcome.winner]
        before = {p: x[p] for p in prefix}
        before[index] = x[index]
        for p in prefix:
            x[p] = 0.0
        if outcome.winner_saturates:
            x[winner], x[index] = 1.0, outcome.residual
        else:
            x[winner], x[index] = outcome.residual, 1.0
        rounds += 1

        if recorder is not None:
            variance = 0.0
            if recorder.subset is not None:
                variance = round_variance(
                    prefix_values,
                    before[index],
                    [p in recorder.members for p in prefix],
                    index in recorder.members,
                )
            recorder.round(rounds, {p: x[p] - before[p] for p in before}, variance)
        prefix = [p for p in (winner, index) if not is_decided(x[p])]

    if _settle(x, prefix, generator, settings.sum_tolerance, recorder, rounds + 1):
        rounds += 1
    return _finish(x, x0, rng, Procedure.X_STAR_STAR, rounds, rounds, recorder)

