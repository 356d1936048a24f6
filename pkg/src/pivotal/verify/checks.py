"""
Checks run against the exact oracle and over random grids of bound arguments.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Optional

from pivotal.bounds.divergence import kl_divergence, pinsker_constant
from pivotal.bounds.general import (
    bernoulli_reduction,
    chernoff_general,
    fgl_general,
    fgl_product_form,
    freedman_general,
    freedman_simplified,
)
from pivotal.bounds.tails import (
    chernoff_bound,
    fgl_pi_star,
    freedman_pi,
    hoeffding_simple,
    uniform_bound,
)
from pivotal.data.types.constants import COMPARISON_LIMIT
from pivotal.data.types.procedure import Procedure
from pivotal.data.types.state import ScaledState
from pivotal.data.types.subset import SubsetSpec
from pivotal.data.utils import check_permutation
from pivotal.errors import DomainError, TooLarge
from pivotal.sampling.kernel import step_branches
from pivotal.sampling.policy import PairPolicy
from pivotal.sampling.random_source import RandomSource
from pivotal.verify.enumeration import ExactDistribution, exact_distribution
from pivotal.verify.verdicts import Check, Verdict, bounded

logger = logging.getLogger(__name__)

EXACT_SLACK = 1e-10
FORM_SLACK = 1e-12

# j/k is compared against α ± δ with this slack so that rounding in α + δ
# never drops the boundary count from a tail.
COUNT_SLACK = 1e-9


@dataclass(frozen=True)
class CheckReport:
    """
    A named group of checks.

    Attributes:
        name: What the group verifies.
        checks: The individual outcomes.
        details: Extra figures for the report.
    """

    name: str
    checks: tuple[Check, ...]
    details: Optional[dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return not any(check.failed for check in self.checks)

    @property
    def verdicts(self) -> tuple[Check, ...]:
        return self.checks

    def to_dict(self) -> dict[str, Any]:
        record: dict[str, Any] = {
            "mode": self.name,
            "verdicts": [check.to_dict() for check in self.checks],
        }
        if self.details is not None:
            record.update(self.details)
        return record


def _interior_pair(generator: Any) -> tuple[float, float]:
    while True:
        xi, xj = generator.random(), generator.random()
        if xi > 0.0 and xj > 0.0:
            return xi, xj


def check_martingale_step(samples: int, seed: int = 0) -> CheckReport:
    """
    Confirms that both branches of a pivotal step keep E[new xⁱ] = xⁱ and
    E[new xʲ] = xʲ on random pairs in (0, 1)², without snapping.

    Args:
        samples: Number of random pairs.
        seed: Seed of the pair generator.

    Returns: One check per case, with the largest error seen.
    """
    generator = RandomSource(seed).generator()
    errors = {"transfer": 0.0, "saturate": 0.0}
    counts = {"transfer": 0, "saturate": 0}
    for _ in range(samples):
        xi, xj = _interior_pair(generator)
        branches = step_branches(xi, xj, snap_tolerance=0.0)
        case = branches[0].case_tag.value
        mean_i = math.fsum(b.branch_prob * b.new_xi for b in branches)
        mean_j = math.fsum(b.branch_prob * b.new_xj for b in branches)
        errors[case] = max(errors[case], abs(mean_i - xi), abs(mean_j - xj))
        counts[case] += 1
    return CheckReport(
        name="martingale",
        checks=tuple(
            bounded(f"martingale_{case}", errors[case], FORM_SLACK) for case in errors
        ),
        details={"samples": samples, "per_case": counts},
    )


def total_variation(a: ExactDistribution, b: ExactDistribution) -> float:
    supports = set(a.sample_pmf) | set(b.sample_pmf)
    return 0.5 * math.fsum(
        abs(a.sample_pmf.get(s, 0.0) - b.sample_pmf.get(s, 0.0)) for s in supports
    )


def compare_procedures(
    x0: ScaledState, order: Optional[Sequence[int]], subset: SubsetSpec
) -> CheckReport:
    """
    Enumerates X (in-order), X* and X** under one order and compares their laws.

    Args:
        x0: The starting state, n ≤ 10.
        order: The common order; the natural order when None.
        subset: The subset tracked by the enumerations.

    Returns: Total-variation checks and the round-count check.
    """
    if x0.n > COMPARISON_LIMIT:
        raise TooLarge(f"procedure comparison is limited to n ≤ {COMPARISON_LIMIT}, got n={x0.n}")
    policy = (
        PairPolicy.in_order()
        if order is None
        else PairPolicy.custom(check_permutation(order, x0.n))
    )
    x_dist = exact_distribution(x0, policy, subset, Procedure.X)
    star = exact_distribution(x0, policy, subset, Procedure.X_STAR)
    star_star = exact_distribution(x0, policy, subset, Procedure.X_STAR_STAR)

    expected_rounds = x0.expected_rounds
    stray_rounds = math.fsum(
        p
        for dist in (star, star_star)
        for rounds, p in dist.round_counts.items()
        if rounds != expected_rounds
    )
    tv_star = total_variation(star, star_star)
    tv_x = total_variation(x_dist, star)
    return CheckReport(
        name="compare",
        checks=(
            bounded("tv_x_star_vs_x_star_star", tv_star, EXACT_SLACK),
            bounded("tv_x_in_order_vs_x_star", tv_x, EXACT_SLACK),
            Check(
                "round_count",
                Verdict.of(stray_rounds == 0.0),
                stray_rounds,
                0.0,
                f"every path should take {expected_rounds} rounds",
            ),
        ),
        details={
            "leaves": {
                Procedure.X_STAR.value: star.leaf_count,
                Procedure.X_STAR_STAR.value: star_star.leaf_count,
            },
            "total_variation": tv_star,
        },
    )


def exact_tails(dist: ExactDistribution, alpha: float, delta: float, k: int) -> tuple[float, float]:
    """
    Returns P[(1/k)|S ∩ A| ≥ α + δ] and P[(1/k)|S ∩ A| ≤ α − δ].
    """
    upper = math.fsum(
        p for j, p in enumerate(dist.subset_pmf) if j >= k * (alpha + delta) - COUNT_SLACK
    )
    lower = math.fsum(
        p for j, p in enumerate(dist.subset_pmf) if j <= k * (alpha - delta) + COUNT_SLACK
    )
    return min(upper, 1.0), min(lower, 1.0)


def tail_domination(
    dist: ExactDistribution, alpha: float, eta: float, delta: float, k: int
) -> tuple[Check, ...]:
    """
    Compares both exact tails against π and π* at η, and against the
    with-replacement bound for reference.
    """
    if delta <= 0:
        raise DomainError("tail domination needs delta > 0")
    upper, lower = exact_tails(dist, alpha, delta, k)
    freedman = freedman_pi(eta, delta, k)
    fgl = fgl_pi_star(eta, delta, k)
    checks = []
    for side, tail in (("upper", upper), ("lower", lower)):
        checks.append(bounded(f"{side}_tail_freedman", tail, freedman, EXACT_SLACK))
        checks.append(bounded(f"{side}_tail_fgl", tail, fgl, EXACT_SLACK))
    if 0.0 < alpha < 1.0:
        for side, tail, reference in (("upper", upper, alpha), ("lower", lower, 1.0 - alpha)):
            checks.append(
                Check(
                    f"{side}_tail_chernoff",
                    Verdict.REFERENCE,
                    tail,
                    chernoff_bound(reference, delta, k),
                    "with-replacement bound, reference only",
                )
            )
    return tuple(checks)


@dataclass
class _Sweep:
    """Counts violations of one inequality over the grid."""

    name: str
    slack: float
    finding: bool = False
    points: int = 0
    violations: int = 0
    worst: float = 0.0

    def record(self, lhs: float, rhs: float) -> None:
        self.points += 1
        gap = lhs - rhs
        if gap > self.slack:
            self.violations += 1
        self.worst = max(self.worst, gap)

    def check(self) -> Check:
        holds = self.violations == 0
        if self.finding and not holds:
            logger.warning("%s violated at %d of %d grid points", self.name, self.violations, self.points)
            return Check(self.name, Verdict.FINDING, float(self.violations), 0.0, f"worst excess {self.worst:.3g}")
        return Check(self.name, Verdict.of(holds), float(self.violations), 0.0)


def check_bound_algebra(points: int, seed: int = 0) -> CheckReport:
    """
    Sweeps random arguments and counts violations of the relations between bounds.

    fgl ≤ freedman at matched arguments is reported as a finding rather than a
    failure; every other relation must hold everywhere.

    Args:
        points: Number of random grid points.
        seed: Seed of the grid.

    Returns: One check per relation, observed = number of violations.
    """
    generator = RandomSource(seed).generator()
    fgl_vs_freedman = _Sweep("fgl_le_freedman", FORM_SLACK, finding=True)
    freedman_vs_simplified = _Sweep("freedman_le_simplified", FORM_SLACK)
    chernoff_vs_hoeffding = _Sweep("chernoff_le_hoeffding", FORM_SLACK)
    fgl_forms = _Sweep("fgl_forms_agree", FORM_SLACK)
    bernoulli = _Sweep("bernoulli_reduction_matches_chernoff", EXACT_SLACK)
    monotone_pi = _Sweep("freedman_pi_monotone_in_eta", FORM_SLACK)
    monotone_pi_star = _Sweep("fgl_pi_star_monotone_in_eta", FORM_SLACK)
    pinsker = _Sweep("kl_ge_pinsker", FORM_SLACK)
    refined = _Sweep("kl_ge_refined_pinsker", FORM_SLACK)
    symmetry = _Sweep("kl_symmetry", FORM_SLACK)
    uniform = _Sweep("uniform_bound_chain", FORM_SLACK)

    for _ in range(points):
        k = int(generator.integers(1, 1001))
        eta, other_eta = sorted(generator.uniform(1e-6, 1.0, size=2))
        delta = float(generator.uniform(0.0, 1.0))
        alpha = float(generator.uniform(0.01, 0.99))
        v, c, T = k * eta, k * delta, float(k)

        fgl_vs_freedman.record(fgl_general(v, c, T), freedman_general(v, c))
        freedman_vs_simplified.record(freedman_general(v, c), freedman_simplified(v, c))
        chernoff_vs_hoeffding.record(chernoff_bound(alpha, delta, k), hoeffding_simple(delta, k))
        kl_form = fgl_general(v, c, T)
        fgl_forms.record(abs(kl_form - fgl_product_form(v, c, T)), 0.0)
        bernoulli.record(
            abs(bernoulli_reduction(alpha, c * alpha, T) - chernoff_general(alpha, c * alpha, T)),
            0.0,
        )
        monotone_pi.record(freedman_pi(eta, delta, k), freedman_pi(other_eta, delta, k))
        monotone_pi_star.record(fgl_pi_star(eta, delta, k), fgl_pi_star(other_eta, delta, k))

        p, q = float(generator.uniform(1e-3, 1.0 - 1e-3)), float(generator.uniform(0.0, 1.0))
        divergence = kl_divergence(q, p)
        scale = 1.0 + divergence
        pinsker.record(2.0 * (q - p) ** 2, divergence + FORM_SLACK * scale)
        refined.record(pinsker_constant(p) * (q - p) ** 2, divergence + 1e-10 * scale)
        symmetry.record(abs(divergence - kl_divergence(1.0 - q, 1.0 - p)), FORM_SLACK * scale)

        chain = uniform_bound(delta, k, refined=True)
        uniform.record(0.0 if chain.holds else 1.0, 0.0)

    sweeps = (
        fgl_vs_freedman,
        freedman_vs_simplified,
        chernoff_vs_hoeffding,
        fgl_forms,
        bernoulli,
        monotone_pi,
        monotone_pi_star,
        pinsker,
        refined,
        symmetry,
        uniform,
    )
    logger.debug("bound algebra sweep over %d points with seed %d", points, seed)
    return CheckReport(
        name="algebra",
        checks=tuple(sweep.check() for sweep in sweeps),
        details={"points": points, "seed": seed},
    )
