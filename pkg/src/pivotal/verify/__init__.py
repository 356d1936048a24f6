from pivotal.verify.checks import (
    CheckReport,
    check_bound_algebra,
    check_martingale_step,
    compare_procedures,
    exact_tails,
    tail_domination,
    total_variation,
)
from pivotal.verify.enumeration import ExactDistribution, exact_distribution
from pivotal.verify.montecarlo import McReport, mc_estimate
from pivotal.verify.report import ExactVerification, build_report, verify_exact
from pivotal.verify.verdicts import Check, Verdict

__all__ = [
    "Check",
    "CheckReport",
    "ExactDistribution",
    "ExactVerification",
    "McReport",
    "Verdict",
    "build_report",
    "check_bound_algebra",
    "check_martingale_step",
    "compare_procedures",
    "exact_distribution",
    "exact_tails",
    "mc_estimate",
    "tail_domination",
    "total_variation",
    "verify_exact",
]
