from pivotal.sampling.kernel import (
    RoundOutcome,
    StepOutcome,
    pivotal_step,
    round_outcomes,
    round_step,
    round_variance,
    step_branches,
    step_variance,
)
from pivotal.sampling.policy import PairPolicy, PolicyKind
from pivotal.sampling.procedures import (
    run_procedure_x,
    run_procedure_x_star,
    run_procedure_x_star_star,
)
from pivotal.sampling.random_source import RandomSource, fresh_seed
from pivotal.sampling.samplers import Sampler, XSampler, XStarSampler, XStarStarSampler
from pivotal.sampling.template import SamplerTemplate

__all__ = [
    "PairPolicy",
    "PolicyKind",
    "RandomSource",
    "RoundOutcome",
    "Sampler",
    "SamplerTemplate",
    "StepOutcome",
    "XSampler",
    "XStarSampler",
    "XStarStarSampler",
    "fresh_seed",
    "pivotal_step",
    "round_outcomes",
    "round_step",
    "round_variance",
    "run_procedure_x",
    "run_procedure_x_star",
    "run_procedure_x_star_star",
    "step_branches",
    "step_variance",
]
