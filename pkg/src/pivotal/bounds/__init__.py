from pivotal.bounds.divergence import REFINED_GAMMA, kl_divergence, pinsker_constant
from pivotal.bounds.eta import (
    BoundInputs,
    EtaProvenance,
    best_of_complement,
    bound_inputs,
    eta_upper_bound,
    m_upper_bound,
)
from pivotal.bounds.general import (
    azuma_general,
    bernoulli_reduction,
    chernoff_general,
    fgl_general,
    fgl_product_form,
    freedman_general,
    freedman_simplified,
)
from pivotal.bounds.report import (
    BoundReport,
    DeviationTable,
    TailSide,
    deviation_table,
    evaluate_bounds,
)
from pivotal.bounds.tails import (
    BoundKind,
    UniformBound,
    azuma_bound,
    chernoff_bound,
    fgl_pi_star,
    freedman_pi,
    freedman_pi_simplified,
    hoeffding_simple,
    required_delta,
    uniform_bound,
)

__all__ = [
    "REFINED_GAMMA",
    "BoundInputs",
    "BoundKind",
    "BoundReport",
    "DeviationTable",
    "EtaProvenance",
    "TailSide",
    "UniformBound",
    "azuma_bound",
    "azuma_general",
    "bernoulli_reduction",
    "best_of_complement",
    "bound_inputs",
    "chernoff_bound",
    "chernoff_general",
    "deviation_table",
    "eta_upper_bound",
    "evaluate_bounds",
    "fgl_general",
    "fgl_pi_star",
    "fgl_product_form",
    "freedman_general",
    "freedman_pi",
    "freedman_pi_simplified",
    "freedman_simplified",
    "hoeffding_simple",
    "kl_divergence",
    "m_upper_bound",
    "pinsker_constant",
    "required_delta",
    "uniform_bound",
]
