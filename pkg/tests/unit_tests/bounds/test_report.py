import math

import pytest

from pivotal.bounds.eta import BoundInputs, EtaProvenance
from pivotal.bounds.report import (
    PROCEDURE_X,
    PROCEDURE_X_STAR,
    WITH_REPLACEMENT,
    TailSide,
    deviation_table,
    evaluate_bounds,
)
from pivotal.bounds.tails import BoundKind, chernoff_bound

DELTA = 2 / 15


def test_upper_tail_report():
    """Test every bound on the upper tail of the worst case α = η = 0.2."""
    report = evaluate_bounds(BoundInputs.worst_case(0.2, DELTA, 100))
    assert report.side is TailSide.UPPER
    assert report.chernoff == pytest.approx(0.0076523, abs=1e-6)
    assert report.freedman == pytest.approx(0.0249, abs=5e-5)
    assert report.fgl == pytest.approx(0.0212, abs=5e-5)
    assert report.azuma == pytest.approx(math.exp(-8 / 9))
    assert report.value(BoundKind.HOEFFDING) == pytest.approx(math.exp(-32 / 9))
    assert report.fgl <= report.freedman <= report.freedman_simplified
    assert report.notes == ()


def test_lower_tail_uses_complement_chernoff():
    """Test that the lower tail evaluates Chernoff at 1 − α and shares π and π*."""
    inputs = BoundInputs.worst_case(0.2, DELTA, 100)
    upper = evaluate_bounds(inputs, TailSide.UPPER)
    lower = evaluate_bounds(inputs, TailSide.LOWER)
    assert lower.chernoff == pytest.approx(chernoff_bound(0.8, DELTA, 100))
    assert lower.freedman == upper.freedman
    assert lower.fgl == upper.fgl


def test_empty_tail():
    """Test that a tail beyond [0, 1] reports zeros and a note."""
    report = evaluate_bounds(BoundInputs.worst_case(0.9, 0.2, 10))
    assert all(value == 0.0 for value in report.values().values())
    assert report.notes


def test_degenerate_alpha():
    """Test an empty subset: Chernoff is 0 for δ > 0 and 1 at δ = 0."""
    inputs = BoundInputs(alpha=0.0, delta=0.0, k=10, eta=0.0, provenance=EtaProvenance.EXACT)
    assert evaluate_bounds(inputs).chernoff == 1.0
    inputs = BoundInputs(alpha=0.0, delta=0.1, k=10, eta=0.0, provenance=EtaProvenance.EXACT)
    report = evaluate_bounds(inputs)
    assert report.chernoff == 0.0
    assert report.freedman == 0.0
    assert evaluate_bounds(inputs, TailSide.LOWER).notes


def test_report_to_dict():
    """Test the serialized report."""
    record = evaluate_bounds(BoundInputs.half(0.3, 0.1, 50), TailSide.LOWER).to_dict()
    assert record["side"] == "lower_tail"
    assert record["inputs"]["eta"] == 0.5
    assert set(record["bounds"]) == {kind.value for kind in BoundKind}


@pytest.mark.parametrize("text, side", [("upper", TailSide.UPPER), ("Lower_Tail", TailSide.LOWER)])
def test_tail_side_from_string(text, side):
    """Test tail names."""
    assert TailSide.from_string(text) is side


def test_tail_side_rejects_unknown_names():
    """Test an unknown tail name."""
    with pytest.raises(ValueError):
        TailSide.from_string("both")


def test_deviation_table():
    """Test the k = 100, α = 0.2, δ = 2/15 table."""
    table = deviation_table()
    assert table.columns == ["m=inf", "m=1000", "m=100", "m=50"]
    expected = {
        WITH_REPLACEMENT: (0.00765, 0.00765, 0.00765, 0.00765),
        PROCEDURE_X: (0.0249, 0.0233, 0.0117, 0.0037),
        PROCEDURE_X_STAR: (0.0212, 0.0198, 0.0097, 0.0029),
    }
    for label, values in expected.items():
        assert table.rows[label] == pytest.approx(values, abs=5e-5)


def test_deviation_table_rows_shrink_with_m():
    """Test that smaller subsets give smaller bounds."""
    table = deviation_table(m_list=(math.inf, 500, 200, 100, 50))
    for label in (PROCEDURE_X, PROCEDURE_X_STAR):
        values = table.rows[label]
        assert list(values) == sorted(values, reverse=True)


def test_deviation_table_to_dict():
    """Test the serialized table."""
    record = deviation_table(k=10, alpha=0.3, delta=0.1, m_list=(math.inf, 20)).to_dict()
    assert record["columns"] == ["m=inf", "m=20"]
    assert set(record["rows"]) == {WITH_REPLACEMENT, PROCEDURE_X, PROCEDURE_X_STAR}
    assert len(record["rows"][PROCEDURE_X]) == 2
