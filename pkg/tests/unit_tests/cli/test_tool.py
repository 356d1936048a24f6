import argparse
import io
import json
import math

import pytest

from pivotal.cli.tool import (
    EXIT_INVALID,
    EXIT_OK,
    main,
    parse_fraction,
    parse_size,
    parse_size_list,
)

SIX_WEIGHTS = [0.05, 0.1, 0.15, 0.2, 0.25, 0.25]


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line]


@pytest.fixture
def instance(write_json):
    return {
        "weights": write_json("weights.json", SIX_WEIGHTS),
        "subset": write_json("subset.json", [1, 3, 4]),
    }


def test_parse_fraction():
    """Test decimals and fractions."""
    assert parse_fraction("2/15") == pytest.approx(2 / 15)
    assert parse_fraction(" 0.25 ") == 0.25
    with pytest.raises(argparse.ArgumentTypeError):
        parse_fraction("-1/2")
    with pytest.raises(argparse.ArgumentTypeError):
        parse_fraction("half")
    with pytest.raises(argparse.ArgumentTypeError):
        parse_fraction("1/0")


def test_parse_size():
    """Test subset size bounds."""
    assert parse_size("inf") == math.inf
    assert parse_size("50") == 50.0
    assert parse_size_list("inf,1000,100") == [math.inf, 1000.0, 100.0]
    with pytest.raises(argparse.ArgumentTypeError):
        parse_size("0")
    with pytest.raises(argparse.ArgumentTypeError):
        parse_size("1.5")


def test_table_json():
    """Test the default table."""
    code, text = run(["table"])
    assert code == EXIT_OK
    (table,) = json_lines(text)
    assert table["columns"] == ["m=inf", "m=1000", "m=100", "m=50"]
    assert table["rows"]["X"] == pytest.approx([0.0249, 0.0233, 0.0117, 0.0037], abs=5e-5)
    assert table["rows"]["X*"] == pytest.approx([0.0212, 0.0198, 0.0097, 0.0029], abs=5e-5)


def test_table_csv():
    """Test the table as CSV."""
    code, text = run(["table", "--format", "csv", "--m-list", "inf,50", "--precision", "3"])
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "row,m=inf,m=50"
    assert lines[2] == "X,0.0249,0.00371"


def test_table_pretty():
    """Test the aligned text table."""
    code, text = run(["table", "--format", "pretty", "--precision", "3"])
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0].split() == ["row", "m=inf", "m=1000", "m=100", "m=50"]
    label, first = lines[3].split()[:2]
    assert label == "X*"
    assert float(first) == pytest.approx(0.0212, abs=1e-4)


def test_bounds_from_alpha():
    """Test bounds at α = 0.2 without subset information."""
    code, text = run(["bounds", "--alpha", "0.2", "--delta", "2/15", "--k", "100"])
    assert code == EXIT_OK
    (document,) = json_lines(text)
    assert document["inputs"]["provenance"] == "worst_case_alpha"
    assert document["inputs"]["m"] == "inf"
    upper = document["tails"]["upper_tail"]
    assert upper["freedman"] == pytest.approx(0.0249, abs=5e-5)
    assert upper["fgl"] == pytest.approx(0.0212, abs=5e-5)
    assert set(document["tails"]) == {"upper_tail", "lower_tail"}


def test_bounds_with_size_bound():
    """Test η̄ from --m."""
    code, text = run(
        ["bounds", "--alpha", "0.2", "--delta", "2/15", "--k", "100", "--m", "50", "--side", "upper"]
    )
    assert code == EXIT_OK
    (document,) = json_lines(text)
    assert document["inputs"]["eta"] == pytest.approx(0.12)
    assert list(document["tails"]) == ["upper_tail"]
    assert document["tails"]["upper_tail"]["freedman"] == pytest.approx(0.0037, abs=5e-5)


def test_bounds_from_weights(instance):
    """Test the exact η of a subset read from files."""
    code, text = run(
        [
            "bounds",
            "--weights-file",
            instance["weights"],
            "--subset-file",
            instance["subset"],
            "--k",
            "2",
            "--delta",
            "0.25",
            "--best-of-complement",
        ]
    )
    assert code == EXIT_OK
    (document,) = json_lines(text)
    assert document["inputs"]["provenance"] == "exact"
    assert document["inputs"]["alpha"] == pytest.approx(0.55)
    assert document["inputs"]["eta"] == pytest.approx(0.275)
    assert document["inputs"]["complement_used"] is True


def test_bounds_uniform_and_target():
    """Test the uniform chain and the required δ."""
    code, text = run(
        ["bounds", "--alpha", "0.3", "--delta", "0.1", "--k", "200", "--uniform", "--target", "0.05"]
    )
    assert code == EXIT_OK
    (document,) = json_lines(text)
    uniform = document["uniform"]
    assert uniform["value"] <= uniform["refined_relaxation"] <= uniform["pinsker_relaxation"]
    assert document["inputs"]["eta"] == 0.5
    assert set(document["required_delta"]) == {"freedman", "fgl"}


def test_bounds_csv():
    """Test the bounds as CSV rows."""
    code, text = run(
        ["bounds", "--alpha", "0.2", "--delta", "0.1", "--k", "10", "--side", "lower", "--format", "csv"]
    )
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "side,bound,value,eta,provenance"
    assert len(lines) == 7
    assert all(line.startswith("lower_tail,") for line in lines[1:])


@pytest.mark.parametrize(
    "argv",
    [
        ["bounds", "--delta", "0.1", "--k", "10"],
        ["bounds", "--alpha", "0.2", "--weights-file", "w.json", "--delta", "0.1", "--k", "10"],
        ["bounds", "--alpha", "0.2", "--delta", "0.1", "--k", "10", "--m", "50", "--uniform"],
        ["bounds", "--alpha", "0.2", "--delta", "0.1", "--k", "10", "--best-of-complement"],
        ["bounds", "--alpha", "1.5", "--delta", "0.1", "--k", "10"],
    ],
)
def test_bounds_rejects_inconsistent_flags(argv, capsys):
    """Test that contradictory or incomplete flags exit with 2."""
    code, text = run(argv)
    assert code == EXIT_INVALID
    assert text == ""
    assert capsys.readouterr().err != ""


def test_sample_is_reproducible(instance):
    """Test that a seed fixes every sample."""
    argv = ["sample", instance["weights"], "--k", "2", "--seed", "7", "--count", "3"]
    code, text = run(argv)
    assert code == EXIT_OK
    assert run(argv)[1] == text
    records = json_lines(text)
    assert [r["stream"] for r in records] == [0, 1, 2]
    for record in records:
        assert record["seed"] == 7
        assert record["procedure"] == "X*"
        assert len(record["sample"]) == 2
        assert record["rounds"] == 2


@pytest.mark.parametrize(
    "extra",
    [["--procedure", "x", "--policy", "random-pair"], ["--procedure", "x-star-star"]],
)
def test_sample_procedures(extra, instance):
    """Test sampling with the other procedures."""
    code, text = run(["sample", instance["weights"], "--k", "2", "--seed", "1", *extra])
    assert code == EXIT_OK
    (record,) = json_lines(text)
    assert len(record["sample"]) == 2


def test_sample_trace(instance):
    """Test that a subset file turns on the traced variances."""
    code, text = run(
        ["sample", instance["weights"], "--k", "2", "--seed", "3", "--subset-file", instance["subset"]]
    )
    assert code == EXIT_OK
    (record,) = json_lines(text)
    trace = record["trace"]
    assert trace["tracked_subset"] == [1, 3, 4]
    assert len(trace["round_boundaries"]) == 2
    assert trace["accumulated_variance"] >= 0


def test_sample_with_ids(tmp_path):
    """Test that samples are labelled by element ids."""
    path = tmp_path / "weights.csv"
    path.write_text("id,weight\na,2\nb,1\nc,1\n")
    code, text = run(["sample", str(path), "--k", "1", "--seed", "5", "--normalize"])
    assert code == EXIT_OK
    (record,) = json_lines(text)
    assert record["sample"][0] in ("a", "b", "c")


def test_sample_csv(instance):
    """Test samples as CSV."""
    code, text = run(
        ["sample", instance["weights"], "--k", "2", "--seed", "2", "--count", "2", "--format", "csv"]
    )
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "seed,stream,procedure,sample,rounds,steps"
    assert len(lines) == 3
    assert lines[1].startswith("2,0,X*,")


def test_sample_rejects_heavy_weights(write_json, capsys):
    """Test that a weight above 1/k exits with 2."""
    path = write_json("heavy.json", [0.8, 0.2])
    code, _ = run(["sample", path, "--k", "2", "--seed", "1"])
    assert code == EXIT_INVALID
    assert "WeightTooLarge" in capsys.readouterr().err


def test_sample_rejects_random_pair_for_ordered_procedures(instance):
    """Test that random-pair needs procedure x."""
    code, _ = run(["sample", instance["weights"], "--k", "2", "--policy", "random-pair"])
    assert code == EXIT_INVALID


def test_sample_missing_file(tmp_path, capsys):
    """Test that an unreadable weight file exits with 2."""
    code, _ = run(["sample", str(tmp_path / "missing.json"), "--k", "2"])
    assert code == EXIT_INVALID
    assert "FileNotFoundError" in capsys.readouterr().err


def test_verify_exact(instance):
    """Test an exact verification run."""
    code, text = run(
        ["verify", instance["weights"], "--k", "2", "--subset-file", instance["subset"], "--delta", "0.25"]
    )
    assert code == EXIT_OK
    (report,) = json_lines(text)
    assert report["mode"] == "exact"
    assert report["procedure"] == "X*"
    assert report["passed"] is True
    assert report["instance"]["subset"] == ["1", "3", "4"]
    assert report["inclusion_errors"]["max_abs"] <= 1e-10


def test_verify_exact_needs_positive_delta(instance):
    """Test that exact verification rejects δ = 0."""
    code, _ = run(
        ["verify", instance["weights"], "--k", "2", "--subset-file", instance["subset"], "--delta", "0"]
    )
    assert code == EXIT_INVALID


def test_verify_exact_needs_subset(instance):
    """Test that exact verification needs a subset file."""
    code, _ = run(["verify", instance["weights"], "--k", "2", "--delta", "0.25"])
    assert code == EXIT_INVALID


def test_verify_mc(instance):
    """Test a Monte Carlo verification run."""
    code, text = run(
        [
            "verify",
            instance["weights"],
            "--mode",
            "mc",
            "--k",
            "2",
            "--subset-file",
            instance["subset"],
            "--delta",
            "0.25",
            "--trials",
            "2000",
            "--seed",
            "3",
            "--procedure",
            "x-star-star",
        ]
    )
    assert code == EXIT_OK
    (report,) = json_lines(text)
    assert report["mode"] == "mc"
    assert report["instance"]["seed"] == 3
    assert report["trials"] == 2000


def test_verify_mc_rejects_few_trials(instance):
    """Test the Monte Carlo trial minimum."""
    code, _ = run(
        [
            "verify",
            instance["weights"],
            "--mode",
            "mc",
            "--k",
            "2",
            "--subset-file",
            instance["subset"],
            "--delta",
            "0.25",
            "--trials",
            "10",
        ]
    )
    assert code == EXIT_INVALID


def test_verify_compare(instance):
    """Test the procedure comparison."""
    code, text = run(["verify", instance["weights"], "--mode", "compare", "--k", "2"])
    assert code == EXIT_OK
    (report,) = json_lines(text)
    assert report["mode"] == "compare"
    assert report["passed"] is True


@pytest.mark.parametrize("mode", ["algebra", "martingale"])
def test_verify_grids(mode):
    """Test the grid sweeps."""
    code, text = run(["verify", "--mode", mode, "--points", "100", "--seed", "4"])
    assert code == EXIT_OK
    (report,) = json_lines(text)
    assert report["mode"] == mode
    assert report["instance"] == {"points": 100, "seed": 4}
    assert report["procedure"] is None


def test_verify_csv():
    """Test verdicts as CSV rows."""
    code, text = run(["verify", "--mode", "martingale", "--points", "50", "--seed", "1", "--format", "csv"])
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "name,verdict,observed,limit,note"
    assert {line.split(",")[0] for line in lines[1:]} == {"martingale_transfer", "martingale_saturate"}


def test_rejects_nonpositive_precision():
    """Test --precision validation."""
    code, _ = run(["table", "--precision", "0"])
    assert code == EXIT_INVALID


def test_usage_errors_exit_with_two():
    """Test argparse usage errors."""
    with pytest.raises(SystemExit) as info:
        main(["unknown"], out=io.StringIO())
    assert info.value.code == 2
