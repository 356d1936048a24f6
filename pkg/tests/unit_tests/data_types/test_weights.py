import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pivotal.data.types.weights import WeightVector, validate_weights
from pivotal.errors import (
    DomainError,
    IndexOutOfRange,
    LengthBelowK,
    NonPositiveTotal,
    WeightTooLarge,
)


def test_validate_weights_accepts_valid_vector():
    """Test a valid weight vector."""
    wv = validate_weights([0.3, 0.7], k=1)
    assert wv.n == 2
    assert wv.k == 1
    assert wv.weights == (0.3, 0.7)
    assert wv.ids is None


def test_validate_weights_normalizes():
    """Test that normalize divides raw weights by their total."""
    wv = validate_weights([1, 2, 3, 4], k=2, normalize=True)
    assert math.isclose(math.fsum(wv.weights), 1.0)
    assert wv.weights[3] == pytest.approx(0.4)


def test_validate_weights_empty_population():
    """Test that an empty population is below any k."""
    with pytest.raises(LengthBelowK):
        validate_weights([], k=1)


def test_validate_weights_all_zero():
    """Test that all-zero weights have no positive total."""
    with pytest.raises(NonPositiveTotal):
        validate_weights([0, 0, 0], k=1)


def test_validate_weights_negative():
    """Test that a negative weight is a domain error."""
    with pytest.raises(DomainError):
        validate_weights([0.5, -0.1, 0.6], k=1)


def test_weight_too_large_reports_index():
    """Test that a weight above 1/k is rejected with its index."""
    with pytest.raises(WeightTooLarge) as error:
        validate_weights([0.2, 0.6, 0.2], k=2)
    assert error.value.index == 1


def test_length_below_k():
    """Test a population smaller than the sample size."""
    with pytest.raises(LengthBelowK):
        validate_weights([0.5, 0.5], k=3)


def test_unnormalized_weights_rejected():
    """Test that weights must sum to 1 unless normalized."""
    with pytest.raises(DomainError):
        validate_weights([0.2, 0.2], k=1)


def test_weight_at_exactly_one_over_k():
    """Test that wⁱ = 1/k is allowed."""
    wv = validate_weights([0.5, 0.25, 0.25], k=2)
    assert wv.weights[0] == 0.5


def test_ids_label_and_lookup():
    """Test id labels and reverse lookup."""
    wv = validate_weights([0.3, 0.7], k=1, ids=["a", "b"])
    assert wv.label(1) == "b"
    assert wv.index_of("a") == 0
    with pytest.raises(IndexOutOfRange):
        wv.index_of("z")


def test_label_without_ids_is_index():
    """Test that labels default to indices."""
    assert validate_weights([0.3, 0.7], k=1).label(0) == "0"


def test_duplicate_ids_rejected():
    """Test that element ids must be unique."""
    with pytest.raises(DomainError):
        WeightVector(weights=(0.5, 0.5), k=1, ids=("a", "a"))


def test_invalid_k():
    """Test that k must be a positive integer."""
    with pytest.raises(DomainError):
        WeightVector(weights=(0.5, 0.5), k=0)


@given(st.lists(st.floats(min_value=0.01, max_value=10.0), min_size=2, max_size=30))
def test_normalized_single_draw_is_always_valid(raw):
    """Test that any positive vector normalizes to a valid k=1 vector."""
    wv = validate_weights(raw, k=1, normalize=True)
    assert abs(math.fsum(wv.weights) - 1.0) <= 1e-9
    assert all(w <= 1.0 for w in wv.weights)
