"""
Verification runs and the JSON report they produce.
"""

from dataclasses import dataclass
from typing import Any, Optional, Protocol

from pivotal.bounds.eta import BoundInputs
from pivotal.bounds.report import TailSide, evaluate_bounds
from pivotal.data.types.procedure import Procedure
from pivotal.data.types.state import scale_weights
from pivotal.data.types.subset import SubsetSpec
from pivotal.data.types.weights import WeightVector
from pivotal.sampling.policy import PairPolicy
from pivotal.verify.checks import EXACT_SLACK, exact_tails, tail_domination
from pivotal.verify.enumeration import ExactDistribution, exact_distribution
from pivotal.verify.verdicts import Check, Verdict, bounded


class Verification(Protocol):
    @property
    def verdicts(self) -> tuple[Check, ...]: ...

    def to_dict(self) -> dict[str, Any]: ...


@dataclass(frozen=True)
class ExactVerification:
    """
    Checks of one enumerated instance.

    Attributes:
        distribution: The exact law.
        inputs: α, δ, k and the exact η of the subset.
        inclusion_error: max_i |P[i ∈ S] − k·wⁱ|.
        verdicts: Inclusion, tail, variance and round checks.
    """

    distribution: ExactDistribution
    inputs: BoundInputs
    inclusion_error: float
    verdicts: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return not any(check.failed for check in self.verdicts)

    def to_dict(self) -> dict[str, Any]:
        dist = self.distribution
        upper, lower = exact_tails(dist, self.inputs.alpha, self.inputs.delta, self.inputs.k)
        return {
            "mode": "exact",
            "inclusion_errors": {
                "max_abs": self.inclusion_error,
                "exact": list(dist.inclusion_probs),
            },
            "tail": {
                "exact": {TailSide.UPPER.value: upper, TailSide.LOWER.value: lower},
                "bounds": {
                    side.value: evaluate_bounds(self.inputs, side).values() for side in TailSide
                },
                "inputs": self.inputs.to_dict(),
            },
            "variance": {
                "expected": dist.expected_vt,
                "max_path": dist.max_path_vt,
                "k_eta": self.inputs.k * self.inputs.eta,
            },
            "distribution": dist.to_dict(),
            "verdicts": [check.to_dict() for check in self.verdicts],
        }


def verify_exact(
    wv: WeightVector,
    subset: SubsetSpec,
    delta: float,
    procedure: Procedure = Procedure.X_STAR,
    policy: Optional[PairPolicy] = None,
) -> ExactVerification:
    """
    Enumerates one instance and checks it against every exact property:
    inclusion probabilities, both tails against π and π*, the variance
    identities and the round count.

    Args:
        wv: The weights.
        subset: The subset A.
        delta: The deviation of both tails, > 0.
        procedure: The procedure to enumerate.
        policy: In-order (default) or custom-order.

    Returns: The distribution with its verdicts.
    """
    x0 = scale_weights(wv)
    policy = policy if policy is not None else PairPolicy.in_order()
    dist = exact_distribution(x0, policy, subset, procedure)
    inputs = BoundInputs.exact(wv, subset, delta)
    k_eta = wv.k * inputs.eta

    inclusion_error = dist.inclusion_error(x0)
    checks = [
        bounded("inclusion", inclusion_error, EXACT_SLACK),
        bounded("pmf_total", abs(dist.pmf_total - 1.0), EXACT_SLACK),
    ]
    checks += tail_domination(dist, inputs.alpha, inputs.eta, delta, wv.k)
    checks.append(bounded("expected_vt_le_k_eta", dist.expected_vt, k_eta, EXACT_SLACK))
    if len(subset) == 1:
        (i,) = subset.members
        checks.append(
            bounded(
                "singleton_variance_identity",
                abs(dist.expected_vt - x0.x[i] * (1.0 - x0.x[i])),
                EXACT_SLACK,
            )
        )
    if dist.subadditivity_excess is not None:
        checks.append(bounded("step_subadditivity", dist.subadditivity_excess, 1e-12))
    stray = sum(p for r, p in dist.round_counts.items() if r != x0.expected_rounds)
    checks.append(Check("round_count", Verdict.of(stray == 0.0), stray, 0.0))
    checks.append(
        Check(
            "max_path_vt",
            Verdict.REFERENCE,
            dist.max_path_vt,
            k_eta,
            "diagnostic; only the expectation is bounded by kη",
        )
    )
    return ExactVerification(dist, inputs, inclusion_error, tuple(checks))


def build_report(
    instance: dict[str, Any],
    procedure: Optional[Procedure],
    result: Verification,
) -> dict[str, Any]:
    """
    Assembles the JSON document of a verification run.

    Args:
        instance: Describes the weights, subset and δ that were verified.
        procedure: The verified procedure; None for the bound algebra sweep.
        result: The verification outcome.

    Returns: The report; ``passed`` is false iff some verdict is FAIL.
    """
    body = result.to_dict()
    return {
        "instance": instance,
        "procedure": procedure.value if procedure is not None else None,
        **body,
        "passed": not any(check.failed for check in result.verdicts),
    }
