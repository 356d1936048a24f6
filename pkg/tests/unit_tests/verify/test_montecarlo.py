import numpy as np
import pytest

from pivotal.data.types.procedure import Procedure
from pivotal.data.types.subset import SubsetSpec
from pivotal.data.types.weights import validate_weights
from pivotal.errors import DomainError
from pivotal.sampling.policy import PairPolicy
from pivotal.verify.montecarlo import _chunks, mc_estimate, standard_error
from pivotal.verify.verdicts import Verdict


def test_chunks_cover_all_replications():
    """Test that chunks split [0, trials) without gaps."""
    chunks = _chunks(1003, 3)
    assert chunks[0][0] == 0
    assert chunks[-1][1] == 1003
    assert all(a[1] == b[0] for a, b in zip(chunks, chunks[1:]))
    assert len(chunks) == 12
    assert _chunks(2, 8) == [(0, 1), (1, 2)]


def test_standard_error():
    """Test sqrt(p(1 − p)/trials)."""
    assert standard_error(0.5, 100) == pytest.approx(0.05)
    assert standard_error(0.0, 100) == 0.0


def test_estimate_is_reproducible(six_weights):
    """Test that a seed fixes the whole report."""
    subset = SubsetSpec.of([1, 3, 4])
    first = mc_estimate(Procedure.X_STAR, six_weights, subset, 0.25, 1000, seed=7)
    second = mc_estimate(Procedure.X_STAR, six_weights, subset, 0.25, 1000, seed=7)
    assert first == second
    assert first.trials == 1000
    assert sum(first.empirical_inclusion) == pytest.approx(2.0)


def test_estimate_matches_weights(six_weights):
    """Test inclusion frequencies and tails of X** against their bounds."""
    report = mc_estimate(Procedure.X_STAR_STAR, six_weights, SubsetSpec.of([1, 3, 4]), 0.25, 4000, seed=1)
    assert report.passed
    record = report.to_dict()
    assert record["mode"] == "mc"
    assert set(record["tail"]["empirical"]) == {"upper_tail", "lower_tail"}
    assert record["tail"]["inputs"]["eta"] == pytest.approx(0.325)


def test_random_pair_fgl_is_reference(six_weights):
    """Test that π* is only a reference for the random-pair policy."""
    report = mc_estimate(
        Procedure.X,
        six_weights,
        SubsetSpec.of([0, 5]),
        0.3,
        1000,
        seed=5,
        policy=PairPolicy.random_pair(),
    )
    verdicts = {check.name: check.verdict for check in report.verdicts}
    assert verdicts["upper_tail_fgl"] is Verdict.REFERENCE
    assert verdicts["upper_tail_freedman"] is not Verdict.REFERENCE


def test_chunking_does_not_change_counts(six_weights):
    """Test that worker processes reproduce the single-process report."""
    subset = SubsetSpec.of([2, 3])
    serial = mc_estimate(Procedure.X_STAR, six_weights, subset, 0.2, 1000, seed=9, jobs=1)
    parallel = mc_estimate(Procedure.X_STAR, six_weights, subset, 0.2, 1000, seed=9, jobs=2)
    assert serial == parallel


@pytest.mark.parametrize(
    "trials, delta, jobs", [(999, 0.1, 1), (1000, -0.1, 1), (1000, 0.1, 0)]
)
def test_rejects_invalid_arguments(trials, delta, jobs, six_weights):
    """Test argument validation."""
    with pytest.raises(DomainError):
        mc_estimate(Procedure.X, six_weights, SubsetSpec.of([0]), delta, trials, seed=1, jobs=jobs)


@pytest.mark.slow
def test_medium_instance(capped_weights):
    """Test n = 200, k = 20 over 10⁵ replications of X* with a random subset of 40."""
    generator = np.random.default_rng(2024)
    raw = generator.uniform(0.05, 1.0, size=200).tolist()
    wv = validate_weights(capped_weights(raw, 20), k=20)
    subset = SubsetSpec.of(int(i) for i in generator.choice(200, 40, replace=False))
    report = mc_estimate(Procedure.X_STAR, wv, subset, 0.1, 100_000, seed=2024, jobs=4)
    checks = {check.name: check for check in report.verdicts}
    assert not checks["inclusion"].failed
    for name in ("upper_tail_freedman", "upper_tail_fgl", "lower_tail_freedman", "lower_tail_fgl"):
        assert not checks[name].failed
    assert report.upper_tail > 0.0
    assert report.lower_tail > 0.0
