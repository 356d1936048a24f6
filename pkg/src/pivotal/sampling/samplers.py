"""
Sampler objects binding a procedure to its starting state and pair policy.
"""

from collections.abc import Sequence
from typing import Optional, Union

from pivotal.data.models import SampleResult
from pivotal.data.types.procedure import Procedure
from pivotal.data.types.state import ScaledState, scale_weights
from pivotal.data.types.subset import SubsetSpec
from pivotal.data.types.weights import WeightVector
from pivotal.data.utils import check_permutation
from pivotal.sampling.policy import PairPolicy, PolicyKind
from pivotal.sampling.procedures import (
    run_procedure_x,
    run_procedure_x_star,
    run_procedure_x_star_star,
)
from pivotal.sampling.random_source import RandomSource
from pivotal.sampling.template import SamplerTemplate


class _BaseSampler(SamplerTemplate):
    procedure: Procedure

    def __init__(self, x0: ScaledState) -> None:
        self.x0 = x0

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(n={self.x0.n}, k={self.x0.k})"

    def sample_many(self, seed: int, count: int, first_stream: int = 0) -> list[SampleResult]:
        source = RandomSource(seed)
        return [self.sample(source.stream(first_stream + r)) for r in range(count)]


class XSampler(_BaseSampler):
    procedure = Procedure.X

    def __init__(self, x0: ScaledState, policy: Optional[PairPolicy] = None) -> None:
        super().__init__(x0)
        self.policy = policy if policy is not None else PairPolicy.in_order()
        if self.policy.kind is PolicyKind.CUSTOM_ORDER:
            self.policy.resolve_order(x0.n)

    def sample(
        self,
        rng: RandomSource,
        trace_subset: Optional[SubsetSpec] = None,
        trace: bool = False,
    ) -> SampleResult:
        return run_procedure_x(self.x0, self.policy, rng, trace_subset, trace)


class XStarSampler(_BaseSampler):
    procedure = Procedure.X_STAR

    def __init__(self, x0: ScaledState, order: Optional[Sequence[int]] = None) -> None:
        super().__init__(x0)
        self.order = check_permutation(order, x0.n) if order is not None else None

    def sample(
        self,
        rng: RandomSource,
        trace_subset: Optional[SubsetSpec] = None,
        trace: bool = False,
    ) -> SampleResult:
        return run_procedure_x_star(self.x0, self.order, rng, trace_subset, trace)


class XStarStarSampler(XStarSampler):
    procedure = Procedure.X_STAR_STAR

    def sample(
        self,
        rng: RandomSource,
        trace_subset: Optional[SubsetSpec] = None,
        trace: bool = False,
    ) -> SampleResult:
        return run_procedure_x_star_star(self.x0, self.order, rng, trace_subset, trace)


def Sampler(
    procedure: Union[Procedure, str],
    weights: Union[WeightVector, ScaledState],
    policy: Optional[PairPolicy] = None,
) -> Union[XSampler, XStarSampler, XStarStarSampler]:
    """
    Builds the sampler of a procedure.

    X takes its pair policy as is. X* and X** follow the order of a custom-order
    policy, the natural order otherwise; they reject the random-pair policy.

    Args:
        procedure: The procedure or its tag ("X", "x-star", ...).
        weights: A weight vector, scaled to x₀ = k·w, or a starting state.
        policy: The pair policy.

    Returns: A sampler ready to draw.
    """
    if isinstance(procedure, str):
        procedure = Procedure.from_string(procedure)
    x0 = scale_weights(weights) if isinstance(weights, WeightVector) else weights

    if procedure is Procedure.X:
        return XSampler(x0, policy)
    if policy is not None and not policy.deterministic:
        raise ValueError(f"{procedure.value} follows a fixed order; random-pair applies to X only")
    order = policy.order if policy is not None else None
    if procedure is Procedure.X_STAR:
        return XStarSampler(x0, order)
    return XStarStarSampler(x0, order)
