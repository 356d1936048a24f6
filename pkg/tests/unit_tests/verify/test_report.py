import json

import pytest

from pivotal.data.types.procedure import Procedure
from pivotal.data.types.subset import SubsetSpec
from pivotal.data.types.weights import validate_weights
from pivotal.sampling.policy import PairPolicy
from pivotal.verify.checks import check_bound_algebra
from pivotal.verify.report import build_report, verify_exact
from pivotal.verify.verdicts import Verdict


@pytest.mark.parametrize("procedure", list(Procedure))
def test_verify_exact_passes(procedure, six_weights):
    """Test every exact check on the six-element instance."""
    result = verify_exact(six_weights, SubsetSpec.of([1, 3, 4]), 0.25, procedure)
    assert result.passed
    names = {check.name for check in result.verdicts}
    assert {"inclusion", "pmf_total", "expected_vt_le_k_eta", "round_count"} <= names
    assert result.inclusion_error <= 1e-10
    assert result.inputs.eta == pytest.approx(0.325)


def test_verify_exact_singleton(six_weights):
    """Test the singleton variance identity check."""
    result = verify_exact(six_weights, SubsetSpec.of([2]), 0.2)
    verdicts = {check.name: check.verdict for check in result.verdicts}
    assert verdicts["singleton_variance_identity"] is Verdict.PASS
    assert verdicts["max_path_vt"] is Verdict.REFERENCE


def test_verify_exact_custom_order():
    """Test an instance with a certain element under a custom order."""
    wv = validate_weights([0.5, 0.1, 0.15, 0.25], k=2)
    result = verify_exact(
        wv, SubsetSpec.of([0, 1]), 0.1, Procedure.X, PairPolicy.custom([3, 2, 1, 0])
    )
    assert result.passed
    assert result.distribution.inclusion_probs[0] == pytest.approx(1.0)


def test_step_subadditivity_only_for_steps(six_weights):
    """Test that collapsed rounds skip the per-step check."""
    subset = SubsetSpec.of([0, 1])
    steps = {c.name for c in verify_exact(six_weights, subset, 0.2, Procedure.X_STAR).verdicts}
    rounds = {c.name for c in verify_exact(six_weights, subset, 0.2, Procedure.X_STAR_STAR).verdicts}
    assert "step_subadditivity" in steps
    assert "step_subadditivity" not in rounds


def test_build_report(six_weights):
    """Test the JSON document of an exact run."""
    result = verify_exact(six_weights, SubsetSpec.of([1, 3, 4]), 0.25)
    report = build_report({"n": 6, "k": 2}, Procedure.X_STAR, result)
    assert report["procedure"] == "X*"
    assert report["mode"] == "exact"
    assert report["passed"] is True
    assert set(report["tail"]["exact"]) == {"upper_tail", "lower_tail"}
    assert report["variance"]["k_eta"] == pytest.approx(0.65)
    json.dumps(report)


def test_build_report_of_algebra_sweep():
    """Test a report without a procedure."""
    report = build_report({"points": 20}, None, check_bound_algebra(20))
    assert report["procedure"] is None
    assert report["mode"] == "algebra"
    assert report["passed"] is True
