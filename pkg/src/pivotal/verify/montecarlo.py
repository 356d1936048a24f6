"""
Monte Carlo estimates of inclusion and tail probabilities.

Replication r always runs on stream r of the seed, so chunking the
replications over worker processes leaves the counts, and the report,
unchanged.
"""

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from pivotal.bounds.eta import BoundInputs
from pivotal.bounds.report import BoundReport, TailSide, evaluate_bounds
from pivotal.bounds.tails import BoundKind
from pivotal.config import get_settings
from pivotal.data.types.constants import MIN_MC_TRIALS, SIGMA_RADIUS
from pivotal.data.types.procedure import Procedure
from pivotal.data.types.state import ScaledState, scale_weights
from pivotal.data.types.subset import SubsetSpec
from pivotal.data.types.weights import WeightVector
from pivotal.errors import DomainError
from pivotal.sampling.policy import PairPolicy
from pivotal.sampling.random_source import RandomSource
from pivotal.sampling.samplers import Sampler
from pivotal.verify.checks import COUNT_SLACK
from pivotal.verify.verdicts import Check, Verdict

logger = logging.getLogger(__name__)

CHUNKS_PER_JOB = 4


@dataclass(frozen=True)
class _Counts:
    inclusion: np.ndarray
    upper: int
    lower: int


def _run_chunk(
    procedure: Procedure,
    x0: ScaledState,
    policy: Optional[PairPolicy],
    members: frozenset[int],
    seed: int,
    start: int,
    stop: int,
    upper_count: float,
    lower_count: float,
) -> _Counts:
    sampler = Sampler(procedure, x0, policy)
    source = RandomSource(seed)
    inclusion = np.zeros(x0.n, dtype=np.int64)
    upper = lower = 0
    for replication in range(start, stop):
        sample = sampler.sample(source.stream(replication)).sample
        inclusion[list(sample)] += 1
        hits = len(sample & members)
        if hits >= upper_count:
            upper += 1
        if hits <= lower_count:
            lower += 1
    return _Counts(inclusion, upper, lower)


def _chunks(trials: int, jobs: int) -> list[tuple[int, int]]:
    count = min(trials, max(1, jobs * CHUNKS_PER_JOB))
    edges = np.linspace(0, trials, count + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def standard_error(p: float, trials: int) -> float:
    return math.sqrt(max(0.0, p * (1.0 - p)) / trials)


@dataclass(frozen=True)
class McReport:
    """
    Empirical frequencies of one procedure over independent replications.

    Attributes:
        procedure: The sampled procedure.
        policy: The pair policy of Procedure X.
        trials: Number of replications.
        seed: The seed; replication r ran on stream r.
        expected_inclusion: k·wⁱ per index.
        empirical_inclusion: Inclusion frequency per index.
        inclusion_radii: sqrt(p̂(1 − p̂)/trials) per index.
        upper_tail: Frequency of (1/k)|S ∩ A| ≥ α + δ.
        upper_radius: Standard error of upper_tail.
        lower_tail: Frequency of (1/k)|S ∩ A| ≤ α − δ.
        lower_radius: Standard error of lower_tail.
        bounds: The bound report of each tail.
        verdicts: The inclusion and tail checks.
    """

    procedure: Procedure
    policy: Optional[PairPolicy]
    trials: int
    seed: int
    expected_inclusion: tuple[float, ...]
    empirical_inclusion: tuple[float, ...]
    inclusion_radii: tuple[float, ...]
    upper_tail: float
    upper_radius: float
    lower_tail: float
    lower_radius: float
    bounds: tuple[BoundReport, BoundReport]
    verdicts: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return not any(check.failed for check in self.verdicts)

    def to_dict(self) -> dict[str, Any]:
        upper, lower = self.bounds
        return {
            "mode": "mc",
            "trials": self.trials,
            "seed": self.seed,
            "inclusion_errors": {
                "max_abs": max(
                    abs(p - x) for p, x in zip(self.empirical_inclusion, self.expected_inclusion)
                ),
                "empirical": list(self.empirical_inclusion),
                "radii": list(self.inclusion_radii),
            },
            "tail": {
                "empirical": {
                    TailSide.UPPER.value: {"value": self.upper_tail, "radius": self.upper_radius},
                    TailSide.LOWER.value: {"value": self.lower_tail, "radius": self.lower_radius},
                },
                "bounds": {
                    TailSide.UPPER.value: upper.values(),
                    TailSide.LOWER.value: lower.values(),
                },
                "inputs": upper.inputs.to_dict(),
            },
            "verdicts": [check.to_dict() for check in self.verdicts],
        }


def _inclusion_check(expected: Sequence[float], empirical: Sequence[float], trials: int) -> Check:
    # The radius is taken at the hypothesised k·wⁱ, so an element of weight 0 or 1/k
    # must match exactly.
    worst = 0.0
    for x, p in zip(expected, empirical):
        radius = SIGMA_RADIUS * standard_error(x, trials)
        error = abs(p - x)
        if radius == 0.0:
            worst = max(worst, 0.0 if error <= 1e-12 else math.inf)
        else:
            worst = max(worst, error / radius)
    return Check(
        "inclusion",
        Verdict.of(worst <= 1.0),
        worst,
        1.0,
        f"largest |p̂ − k·wⁱ| in units of {SIGMA_RADIUS:g} standard errors",
    )


def _tail_checks(
    report: BoundReport,
    empirical: float,
    radius: float,
    policy: Optional[PairPolicy],
    procedure: Procedure,
) -> list[Check]:
    side = "upper" if report.side is TailSide.UPPER else "lower"
    limit_slack = SIGMA_RADIUS * radius
    random_pair = (
        procedure is Procedure.X and policy is not None and not policy.deterministic
    )
    checks = []
    for kind in (BoundKind.FREEDMAN, BoundKind.FGL, BoundKind.CHERNOFF):
        bound = report.value(kind)
        name = f"{side}_tail_{kind.value}"
        if kind is BoundKind.CHERNOFF or (kind is BoundKind.FGL and random_pair):
            checks.append(Check(name, Verdict.REFERENCE, empirical, bound, "reference only"))
        else:
            checks.append(
                Check(name, Verdict.of(empirical <= bound + limit_slack), empirical, bound + limit_slack)
            )
    return checks


def mc_estimate(
    procedure: Procedure,
    wv: WeightVector,
    subset: SubsetSpec,
    delta: float,
    trials: int,
    seed: int,
    policy: Optional[PairPolicy] = None,
    jobs: Optional[int] = None,
) -> McReport:
    """
    Runs ``trials`` replications and compares the empirical tails of
    (1/k)|S ∩ A| with π and π* at the exact η of A.

    Args:
        procedure: The procedure to sample.
        wv: The weights.
        subset: The subset A.
        delta: The deviation of both tails.
        trials: Number of replications, at least 1000.
        seed: The seed; replication r runs on stream r.
        policy: The pair policy of Procedure X, or the order of X* and X**.
        jobs: Worker processes; the configured default when None.

    Returns: The report with its verdicts.
    """
    if trials < MIN_MC_TRIALS:
        raise DomainError(f"trials must be at least {MIN_MC_TRIALS}, got {trials}")
    if math.isnan(delta) or delta < 0:
        raise DomainError(f"delta = {delta!r} must be nonnegative")
    jobs = get_settings().jobs if jobs is None else jobs
    if jobs < 1:
        raise DomainError(f"jobs must be positive, got {jobs}")
    subset.check_range(wv.n)

    x0 = scale_weights(wv)
    inputs = BoundInputs.exact(wv, subset, delta)
    upper_count = wv.k * (inputs.alpha + delta) - COUNT_SLACK
    lower_count = wv.k * (inputs.alpha - delta) + COUNT_SLACK

    chunks = _chunks(trials, jobs)
    arguments = [
        (procedure, x0, policy, subset.members, seed, start, stop, upper_count, lower_count)
        for start, stop in chunks
    ]
    logger.debug("running %d replications in %d chunks on %d jobs", trials, len(chunks), jobs)
    if jobs == 1:
        results = [_run_chunk(*args) for args in arguments]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(_run_chunk, *zip(*arguments)))

    inclusion = np.sum([r.inclusion for r in results], axis=0)
    upper_tail = sum(r.upper for r in results) / trials
    lower_tail = sum(r.lower for r in results) / trials
    empirical = tuple(float(c) / trials for c in inclusion)

    upper_report = evaluate_bounds(inputs, TailSide.UPPER)
    lower_report = evaluate_bounds(inputs, TailSide.LOWER)
    upper_radius = standard_error(upper_tail, trials)
    lower_radius = standard_error(lower_tail, trials)
    verdicts = [_inclusion_check(x0.x, empirical, trials)]
    verdicts += _tail_checks(upper_report, upper_tail, upper_radius, policy, procedure)
    verdicts += _tail_checks(lower_report, lower_tail, lower_radius, policy, procedure)

    return McReport(
        procedure=procedure,
        policy=policy,
        trials=trials,
        seed=seed,
        expected_inclusion=x0.x,
        empirical_inclusion=empirical,
        inclusion_radii=tuple(standard_error(p, trials) for p in empirical),
        upper_tail=upper_tail,
        upper_radius=upper_radius,
        lower_tail=lower_tail,
        lower_radius=lower_radius,
        bounds=(upper_report, lower_report),
        verdicts=tuple(verdicts),
    )
