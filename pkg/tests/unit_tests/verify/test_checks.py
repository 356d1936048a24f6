import pytest

from pivotal.data.types.state import ScaledState, scale_weights
from pivotal.data.types.subset import SubsetSpec
from pivotal.data.types.weights import validate_weights
from pivotal.errors import DomainError, TooLarge
from pivotal.sampling.policy import PairPolicy
from pivotal.verify.checks import (
    check_bound_algebra,
    check_martingale_step,
    compare_procedures,
    exact_tails,
    tail_domination,
    total_variation,
)
from pivotal.verify.enumeration import exact_distribution
from pivotal.verify.verdicts import Check, Verdict, bounded


def test_verdict_of():
    """Test PASS and FAIL from a boolean."""
    assert Verdict.of(True) is Verdict.PASS
    assert Verdict.of(False) is Verdict.FAIL


def test_bounded_check():
    """Test observed ≤ limit + slack."""
    assert bounded("x", 1.0, 1.0).verdict is Verdict.PASS
    assert bounded("x", 1.0 + 1e-11, 1.0, 1e-10).verdict is Verdict.PASS
    assert bounded("x", 1.1, 1.0).failed


def test_check_to_dict_omits_missing_fields():
    """Test the serialized check."""
    assert Check("x", Verdict.REFERENCE).to_dict() == {"name": "x", "verdict": "REFERENCE"}
    record = Check("y", Verdict.PASS, 0.5, 1.0, "note").to_dict()
    assert record == {"name": "y", "verdict": "PASS", "observed": 0.5, "limit": 1.0, "note": "note"}


def test_martingale_step_check():
    """Test the one-step martingale property over random pairs."""
    report = check_martingale_step(2000, seed=3)
    assert report.passed
    assert {check.name for check in report.checks} == {"martingale_transfer", "martingale_saturate"}
    assert sum(report.details["per_case"].values()) == 2000
    assert report.to_dict()["mode"] == "martingale"


@pytest.mark.parametrize("order", [None, [5, 4, 3, 2, 1, 0], [2, 0, 4, 1, 5, 3]])
def test_compare_procedures(order, six_weights):
    """Test that X (in order), X* and X** have one law under a common order."""
    report = compare_procedures(scale_weights(six_weights), order, SubsetSpec.of([1, 3]))
    assert report.passed
    assert report.details["total_variation"] == pytest.approx(0.0, abs=1e-10)


def test_compare_procedures_size_limit():
    """Test that the comparison is limited to n ≤ 10."""
    x0 = scale_weights(validate_weights([1] * 11, k=2, normalize=True))
    with pytest.raises(TooLarge):
        compare_procedures(x0, None, SubsetSpec.of([0]))


def test_total_variation_of_different_laws():
    """Test the distance between two different orders' laws of one instance."""
    x0 = ScaledState(x=(0.3, 0.7), k=1)
    dist = exact_distribution(x0, PairPolicy.in_order(), SubsetSpec.of([0]))
    assert total_variation(dist, dist) == 0.0
    other = exact_distribution(
        ScaledState(x=(0.7, 0.3), k=1), PairPolicy.in_order(), SubsetSpec.of([0])
    )
    assert total_variation(dist, other) == pytest.approx(0.4)


def test_exact_tails():
    """Test both tails of a two-element instance."""
    x0 = ScaledState(x=(0.3, 0.7), k=1)
    dist = exact_distribution(x0, PairPolicy.in_order(), SubsetSpec.of([0]))
    upper, lower = exact_tails(dist, 0.3, 0.5, 1)
    assert upper == pytest.approx(0.3)
    assert lower == 0.0
    upper, lower = exact_tails(dist, 0.3, 0.3, 1)
    assert lower == pytest.approx(0.7)


def test_tail_domination(six_weights):
    """Test that the exact tails of X* sit below π and π*."""
    x0 = scale_weights(six_weights)
    dist = exact_distribution(x0, PairPolicy.in_order(), SubsetSpec.of([1, 3, 4]))
    checks = tail_domination(dist, 0.55, 0.325, 0.25, 2)
    assert not any(check.failed for check in checks)
    verdicts = {check.name: check.verdict for check in checks}
    assert verdicts["upper_tail_chernoff"] is Verdict.REFERENCE
    assert verdicts["upper_tail_fgl"] is Verdict.PASS
    with pytest.raises(DomainError):
        tail_domination(dist, 0.55, 0.325, 0.0, 2)


def test_bound_algebra_sweep():
    """Test that every relation between the bounds holds on a random grid."""
    report = check_bound_algebra(300, seed=11)
    assert report.passed
    verdicts = {check.name: check.verdict for check in report.checks}
    assert len(verdicts) == 11
    assert verdicts["fgl_le_freedman"] in (Verdict.PASS, Verdict.FINDING)
    for name in ("fgl_forms_agree", "bernoulli_reduction_matches_chernoff", "uniform_bound_chain"):
        assert verdicts[name] is Verdict.PASS
    assert report.to_dict()["points"] == 300


def test_bound_algebra_is_reproducible():
    """Test that the sweep depends only on its seed."""
    assert check_bound_algebra(50, seed=2) == check_bound_algebra(50, seed=2)


@pytest.mark.slow
def test_bound_algebra_full_sweep():
    """Test the bound relations on 10⁴ random points."""
    report = check_bound_algebra(10_000, seed=1)
    assert report.passed, [check.name for check in report.checks if check.failed]
    assert report.to_dict()["points"] == 10_000
