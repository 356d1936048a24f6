from pivotal.data.loaders import load_order, load_subset, load_weights, read_weights
from pivotal.data.models import SampleResult
from pivotal.data.types.procedure import Procedure
from pivotal.data.types.state import ScaledState, scale_weights, unscale
from pivotal.data.types.subset import (
    SubsetSpec,
    complement,
    eta_decomposed,
    eta_exact,
    subset_alpha,
)
from pivotal.data.types.trace import StepCase, TraceStep, TrajectoryTrace
from pivotal.data.types.weights import WeightVector, validate_weights
from pivotal.data.utils import check_permutation, resolve_order, resolve_subset

__all__ = [
    "Procedure",
    "SampleResult",
    "ScaledState",
    "StepCase",
    "SubsetSpec",
    "TraceStep",
    "TrajectoryTrace",
    "WeightVector",
    "check_permutation",
    "complement",
    "eta_decomposed",
    "eta_exact",
    "load_order",
    "load_subset",
    "load_weights",
    "read_weights",
    "resolve_order",
    "resolve_subset",
    "scale_weights",
    "subset_alpha",
    "unscale",
    "validate_weights",
]
