import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pivotal.data.types.state import ScaledState, is_decided, scale_weights, snap, unscale
from pivotal.data.types.weights import validate_weights
from pivotal.errors import DomainError


def test_snap_to_bounds():
    """Test snapping within tolerance of 0 and 1."""
    assert snap(1e-13) == 0.0
    assert snap(1.0 - 1e-13) == 1.0
    assert snap(0.5) == 0.5
    assert snap(1e-6, tolerance=1e-5) == 0.0


def test_is_decided():
    """Test decided coordinates."""
    assert is_decided(0.0)
    assert is_decided(1.0)
    assert not is_decided(0.5)


def test_scale_weights():
    """Test x₀ = k·w."""
    wv = validate_weights([0.1, 0.2, 0.3, 0.4], k=2)
    state = scale_weights(wv)
    assert state.x == pytest.approx((0.2, 0.4, 0.6, 0.8))
    assert state.k == 2
    assert unscale(state) == pytest.approx(wv.weights)


def test_scale_weights_marks_certain_elements():
    """Test that wⁱ = 1/k starts decided at 1."""
    state = scale_weights(validate_weights([0.5, 0.25, 0.25], k=2))
    assert state.certain == frozenset({0})
    assert state.undecided == (1, 2)
    assert state.expected_rounds == 1


def test_state_rejects_coordinates_outside_unit_interval():
    """Test Δ membership."""
    with pytest.raises(DomainError):
        ScaledState(x=(1.2, -0.2), k=1)


def test_state_rejects_wrong_sum():
    """Test that Σx must equal k."""
    with pytest.raises(DomainError):
        ScaledState(x=(0.5, 0.4), k=1)


def test_from_values_infers_k():
    """Test that from_values rounds the coordinate sum to k."""
    state = ScaledState.from_values([0.5, 0.5, 1.0 - 1e-13])
    assert state.k == 2
    assert state.x[2] == 1.0
    assert state.undecided == (0, 1)


def test_subset_sum():
    """Test the sum of coordinates over a subset."""
    state = ScaledState(x=(0.25, 0.25, 0.5, 1.0), k=2)
    assert state.subset_sum([0, 2]) == 0.75


def test_scale_weights_within_sum_tolerance():
    """Test weights whose sum is short of 1 by less than the tolerance."""
    wv = validate_weights([0.03333333333] * 30, k=20)
    state = scale_weights(wv)
    assert state.k == 20
    assert math.fsum(state.x) == pytest.approx(20, abs=1e-12)
    assert all(0.0 < value < 1.0 for value in state.x)


def test_scale_weights_caps_coordinates_at_one():
    """Test a weight above 1/k by less than the bound tolerance."""
    first = 1 / 100 + 1e-12
    wv = validate_weights([first] + [(1.0 - first) / 199] * 199, k=100)
    state = scale_weights(wv)
    assert state.x[0] == 1.0
    assert state.certain == frozenset({0})
    assert max(state.x) == 1.0
    assert math.fsum(state.x) == pytest.approx(100, abs=1e-9)


@given(
    raw=st.lists(st.floats(min_value=0.05, max_value=1.0), min_size=2, max_size=12),
    k_draw=st.integers(min_value=0, max_value=20),
)
def test_scale_weights_recovers_weights(raw, k_draw, capped_weights):
    """Test that x₀/k gives back normalized weights."""
    k = 1 + k_draw % (len(raw) - 1)
    wv = validate_weights(capped_weights(raw, k), k=k)
    state = scale_weights(wv)
    for value, weight in zip(state.x, wv.weights):
        assert abs(value / k - weight) <= 1e-15
