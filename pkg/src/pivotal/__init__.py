from pivotal.data import (
    Procedure,
    SampleResult,
    ScaledState,
    SubsetSpec,
    WeightVector,
    complement,
    eta_decomposed,
    eta_exact,
    load_order,
    load_subset,
    load_weights,
    scale_weights,
    subset_alpha,
    validate_weights,
)
from pivotal.errors import (
    DomainError,
    IndexOutOfRange,
    InvalidDocument,
    InvalidFlags,
    InvalidPermutation,
    LengthBelowK,
    NonPositiveTotal,
    PivotalError,
    TooLarge,
    WeightTooLarge,
)
from pivotal.config import Settings, get_settings
from pivotal.sampling import (
    PairPolicy,
    RandomSource,
    Sampler,
    pivotal_step,
    round_step,
    run_procedure_x,
    run_procedure_x_star,
    run_procedure_x_star_star,
)
from pivotal.bounds import (
    BoundInputs,
    BoundKind,
    TailSide,
    best_of_complement,
    chernoff_bound,
    deviation_table,
    evaluate_bounds,
    fgl_pi_star,
    freedman_pi,
    kl_divergence,
    uniform_bound,
)
from pivotal.verify import (
    build_report,
    check_martingale_step,
    compare_procedures,
    exact_distribution,
    mc_estimate,
)

__all__ = (
    "BoundInputs",
    "BoundKind",
    "DomainError",
    "IndexOutOfRange",
    "InvalidDocument",
    "InvalidFlags",
    "InvalidPermutation",
    "LengthBelowK",
    "NonPositiveTotal",
    "PairPolicy",
    "PivotalError",
    "Procedure",
    "RandomSource",
    "SampleResult",
    "Sampler",
    "ScaledState",
    "Settings",
    "SubsetSpec",
    "TailSide",
    "TooLarge",
    "WeightTooLarge",
    "WeightVector",
    "best_of_complement",
    "build_report",
    "check_martingale_step",
    "chernoff_bound",
    "compare_procedures",
    "complement",
    "deviation_table",
    "eta_decomposed",
    "eta_exact",
    "evaluate_bounds",
    "exact_distribution",
    "fgl_pi_star",
    "freedman_pi",
    "get_settings",
    "kl_divergence",
    "load_order",
    "load_subset",
    "load_weights",
    "mc_estimate",
    "pivotal_step",
    "round_step",
    "run_procedure_x",
    "run_procedure_x_star",
    "run_procedure_x_star_star",
    "scale_weights",
    "subset_alpha",
    "uniform_bound",
    "validate_weights",
)
