"""Command-line tool for drawing pivotal samples, evaluating tail bounds and verifying both"""

import argparse
import logging
import math
import sys
from collections.abc import Sequence
from dataclasses import asdict
from fractions import Fraction
from typing import Any, Optional, TextIO

from cerberus import Validator

from pivotal.bounds.eta import bound_inputs
from pivotal.bounds.report import TailSide, deviation_table, evaluate_bounds
from pivotal.bounds.tails import BoundKind, required_delta, uniform_bound
from pivotal.cli.output import (
    format_table,
    write_csv,
    write_json_line,
    write_pretty,
)
from pivotal.config import get_settings
from pivotal.data.loaders import load_order, load_subset, load_weights
from pivotal.data.types.constants import DEFAULT_PRECISION, MAX_SEED
from pivotal.data.types.procedure import Procedure
from pivotal.data.types.state import scale_weights
from pivotal.data.types.subset import SubsetSpec
from pivotal.data.types.weights import WeightVector
from pivotal.errors import InvalidFlags, PivotalError
from pivotal.sampling.policy import PairPolicy
from pivotal.sampling.random_source import RandomSource, fresh_seed
from pivotal.sampling.samplers import Sampler
from pivotal.verify.checks import check_bound_algebra, check_martingale_step, compare_procedures
from pivotal.verify.montecarlo import mc_estimate
from pivotal.verify.report import build_report, verify_exact

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2

PROCEDURES = ["x", "x-star", "x-star-star"]
POLICIES = ["in-order", "random-pair"]
FORMATS = ["json", "csv", "pretty"]
VERIFY_MODES = ["exact", "mc", "compare", "algebra", "martingale"]
LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]

SEED_SCHEMA = {"type": "integer", "min": 0, "max": MAX_SEED - 1, "nullable": True}

SAMPLE_FLAGS_SCHEMA = {
    "k": {"type": "integer", "min": 1},
    "count": {"type": "integer", "min": 1},
    "seed": SEED_SCHEMA,
    "procedure": {"type": "string", "allowed": PROCEDURES},
    "random_pair": {
        "type": "boolean",
        "dependencies": {"procedure": ["x"]},
        "excludes": "order_file",
    },
    "order_file": {"type": "string"},
    "subset_file": {"type": "string"},
}

BOUNDS_FLAGS_SCHEMA = {
    "k": {"type": "integer", "min": 1},
    "delta": {"type": "float", "min": 0.0, "required": True},
    # exactly one of the analytic α and the weights file
    "alpha": {"type": "float", "required": True, "excludes": "weights_file"},
    "weights_file": {
        "type": "string",
        "required": True,
        "excludes": "alpha",
        "dependencies": "subset_file",
    },
    "subset_file": {"type": "string", "dependencies": "weights_file"},
    "m": {"type": "float", "min": 1.0, "dependencies": "alpha", "excludes": "uniform"},
    "uniform": {"type": "boolean", "dependencies": "alpha"},
    "best_of_complement": {"type": "boolean", "dependencies": "weights_file"},
    "target": {"type": "float", "min": 0.0, "max": 1.0},
}

INSTANCE_FLAGS_SCHEMA = {
    "mode": {"type": "string", "allowed": ["exact", "mc"]},
    "weights_file": {"type": "string", "required": True},
    "subset_file": {"type": "string", "required": True},
    "k": {"type": "integer", "min": 1, "required": True},
    "delta": {"type": "float", "min": 0.0, "required": True},
    "trials": {"type": "integer", "min": 1000},
    "seed": SEED_SCHEMA,
    "jobs": {"type": "integer", "min": 1},
    "procedure": {"type": "string", "allowed": PROCEDURES},
    "random_pair": {
        "type": "boolean",
        "dependencies": {"procedure": ["x"], "mode": ["mc"]},
        "excludes": "order_file",
    },
    "order_file": {"type": "string"},
}

COMPARE_FLAGS_SCHEMA = {
    "mode": {"type": "string", "allowed": ["compare"]},
    "weights_file": {"type": "string", "required": True},
    "k": {"type": "integer", "min": 1, "required": True},
    "subset_file": {"type": "string"},
    "order_file": {"type": "string"},
}

GRID_FLAGS_SCHEMA = {
    "mode": {"type": "string", "allowed": ["algebra", "martingale"]},
    "points": {"type": "integer", "min": 1},
    "seed": SEED_SCHEMA,
}


def _raise_invalid_flags(document: dict[str, Any], schema: dict) -> None:
    flags = {key: value for key, value in document.items() if value is not None and value is not False}
    v = Validator(schema)
    if not v.validate(flags):
        raise InvalidFlags(f"inconsistent flags: {v.errors}")


def parse_fraction(text: str) -> float:
    """
    Parses a nonnegative decimal or fraction string such as "2/15".
    """
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number or fraction: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {text!r}")
    return float(value)


def parse_size(text: str) -> float:
    """
    Parses a subset size bound: a positive integer or "inf".
    """
    if text.strip().lower() in ("inf", "infinity", "∞"):
        return math.inf
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer or inf: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return float(value)


def parse_size_list(text: str) -> list[float]:
    return [parse_size(part) for part in text.split(",") if part.strip() != ""]


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=FORMATS, default="json", help="output format (default: json)"
    )
    common.add_argument(
        "--precision",
        type=int,
        default=DEFAULT_PRECISION,
        help=f"significant digits of printed numbers (default: {DEFAULT_PRECISION})",
    )
    common.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default=None,
        help="log level on stderr (default: PIVOTAL_LOG_LEVEL or WARNING)",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="pivotal",
        description=(
            "Unequal-probability sampling without replacement by the pivotal "
            "martingale procedures, with their tail bounds."
        ),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sample = commands.add_parser("sample", parents=[common], help="draw samples from a weight file")
    sample.add_argument("weights_file", help="CSV (id,weight or weight) or JSON weight file")
    sample.add_argument("--k", type=int, required=True, help="sample size")
    sample.add_argument("--procedure", choices=PROCEDURES, default="x-star")
    sample.add_argument("--policy", choices=POLICIES, default="in-order", help="pair policy of X")
    sample.add_argument("--order-file", help="JSON array of ids or indices giving the order")
    sample.add_argument("--seed", type=int, help="64-bit seed (generated and logged if absent)")
    sample.add_argument("--count", type=int, default=1, help="number of samples")
    sample.add_argument("--trace", action="store_true", help="include the trajectory")
    sample.add_argument("--subset-file", help="subset whose variance the trace records")
    sample.add_argument("--normalize", action="store_true", help="divide weights by their sum")

    bounds = commands.add_parser("bounds", parents=[common], help="evaluate every tail bound")
    bounds.add_argument("--alpha", type=parse_fraction, help="relative weight of the subset")
    bounds.add_argument("--delta", type=parse_fraction, required=True, help="deviation, e.g. 2/15")
    bounds.add_argument("--k", type=int, required=True, help="sample size")
    bounds.add_argument("--m", type=parse_size, help="bound on the subset size, or inf")
    bounds.add_argument("--weights-file", help="weights, for the exact η of --subset-file")
    bounds.add_argument("--subset-file", help="JSON array of subset ids or indices")
    bounds.add_argument("--normalize", action="store_true", help="divide weights by their sum")
    bounds.add_argument("--side", choices=["upper", "lower", "both"], default="both")
    bounds.add_argument("--best-of-complement", action="store_true", help="use min(ηᴬ, ηᴮ)")
    bounds.add_argument("--uniform", action="store_true", help="use η = 1/2, valid for any subset")
    bounds.add_argument("--target", type=parse_fraction, help="report the δ reaching this bound")

    table = commands.add_parser("table", parents=[common], help="tabulate the bounds across m")
    table.add_argument("--k", type=int, default=100)
    table.add_argument("--alpha", type=parse_fraction, default=0.2)
    table.add_argument("--delta", type=parse_fraction, default=float(Fraction(2, 15)))
    table.add_argument("--m-list", type=parse_size_list, default=[math.inf, 1000.0, 100.0, 50.0])

    verify = commands.add_parser("verify", parents=[common], help="run a verification campaign")
    verify.add_argument("weights_file", nargs="?", help="weight file of the instance")
    verify.add_argument("--mode", choices=VERIFY_MODES, default="exact")
    verify.add_argument("--k", type=int, help="sample size")
    verify.add_argument("--subset-file", help="JSON array of subset ids or indices")
    verify.add_argument("--delta", type=parse_fraction, help="deviation of both tails")
    verify.add_argument("--trials", type=int, default=10000, help="Monte Carlo replications")
    verify.add_argument("--seed", type=int, help="64-bit seed (generated and logged if absent)")
    verify.add_argument("--procedure", choices=PROCEDURES, default="x-star")
    verify.add_argument("--policy", choices=POLICIES, default="in-order")
    verify.add_argument("--order-file", help="JSON array of ids or indices giving the order")
    verify.add_argument("--jobs", type=int, default=None, help="Monte Carlo worker processes")
    verify.add_argument("--points", type=int, default=10000, help="grid size of algebra/martingale")
    verify.add_argument("--normalize", action="store_true", help="divide weights by their sum")
    return parser


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    seed = fresh_seed()
    logger.info("no --seed given, using seed %d", seed)
    return seed


def _policy(options: argparse.Namespace, wv: WeightVector) -> PairPolicy:
    if options.policy == "random-pair":
        return PairPolicy.random_pair()
    if options.order_file:
        return PairPolicy.custom(load_order(options.order_file, wv))
    return PairPolicy.in_order()


def _flag_document(options: argparse.Namespace, *names: str) -> dict[str, Any]:
    document = {name: getattr(options, name, None) for name in names}
    document["random_pair"] = getattr(options, "policy", None) == "random-pair"
    return document


def cmd_sample(options: argparse.Namespace, out: TextIO) -> int:
    _raise_invalid_flags(
        _flag_document(options, "k", "count", "seed", "procedure", "order_file", "subset_file"),
        SAMPLE_FLAGS_SCHEMA,
    )
    wv = load_weights(options.weights_file, options.k, normalize=options.normalize)
    procedure = Procedure.from_string(options.procedure)
    policy = _policy(options, wv)
    subset = load_subset(options.subset_file, wv) if options.subset_file else None
    seed = _resolve_seed(options.seed)

    sampler = Sampler(procedure, scale_weights(wv), policy)
    source = RandomSource(seed)
    trace = options.trace or subset is not None
    records = (
        sampler.sample(source.stream(stream), trace_subset=subset, trace=trace).to_record(wv)
        for stream in range(options.count)
    )
    if options.format == "csv":
        write_csv(
            out,
            ["seed", "stream", "procedure", "sample", "rounds", "steps"],
            (
                [r["seed"], r["stream"], r["procedure"], r["sample"], r["rounds"], r["steps"]]
                for r in records
            ),
            options.precision,
        )
    elif options.format == "pretty":
        for record in records:
            write_pretty(out, record, options.precision)
    else:
        for record in records:
            write_json_line(out, record, options.precision)
    return EXIT_OK


def cmd_bounds(options: argparse.Namespace, out: TextIO) -> int:
    _raise_invalid_flags(
        {
            "k": options.k,
            "delta": options.delta,
            "alpha": options.alpha,
            "weights_file": options.weights_file,
            "subset_file": options.subset_file,
            "m": options.m,
            "uniform": options.uniform,
            "best_of_complement": options.best_of_complement,
            "target": options.target,
        },
        BOUNDS_FLAGS_SCHEMA,
    )
    wv: Optional[WeightVector] = None
    subset: Optional[SubsetSpec] = None
    if options.weights_file:
        wv = load_weights(options.weights_file, options.k, normalize=options.normalize)
        subset = load_subset(options.subset_file, wv)
    inputs = bound_inputs(
        options.delta,
        k=options.k,
        alpha=options.alpha,
        m=options.m,
        wv=wv,
        subset=subset,
        best_of_complement=options.best_of_complement,
        uniform=options.uniform,
    )
    sides = list(TailSide) if options.side == "both" else [TailSide.from_string(options.side)]
    reports = [evaluate_bounds(inputs, side) for side in sides]

    document: dict[str, Any] = {
        "inputs": inputs.to_dict(),
        "tails": {report.side.value: report.values() for report in reports},
        "notes": [note for report in reports for note in report.notes],
    }
    if options.uniform:
        document["uniform"] = asdict(uniform_bound(inputs.delta, inputs.k, refined=True))
    if options.target is not None:
        document["required_delta"] = {
            kind.value: required_delta(inputs.eta, inputs.k, options.target, kind)
            for kind in (BoundKind.FREEDMAN, BoundKind.FGL)
        }

    if options.format == "csv":
        write_csv(
            out,
            ["side", "bound", "value", "eta", "provenance"],
            (
                [side, bound, value, inputs.eta, inputs.provenance.value]
                for side, values in document["tails"].items()
                for bound, value in values.items()
            ),
            options.precision,
        )
    elif options.format == "pretty":
        write_pretty(out, document, options.precision)
    else:
        write_json_line(out, document, options.precision)
    return EXIT_OK


def cmd_table(options: argparse.Namespace, out: TextIO) -> int:
    table = deviation_table(options.k, options.alpha, options.delta, options.m_list)
    header = ["row", *table.columns]
    rows = [[label, *values] for label, values in table.rows.items()]
    if options.format == "csv":
        write_csv(out, header, rows, options.precision)
    elif options.format == "pretty":
        for line in format_table(header, rows, options.precision):
            out.write(line + "\n")
    else:
        write_json_line(out, table.to_dict(), options.precision)
    return EXIT_OK


def _instance(options: argparse.Namespace, wv: WeightVector, subset: SubsetSpec) -> dict[str, Any]:
    return {
        "weights_file": options.weights_file,
        "n": wv.n,
        "k": wv.k,
        "subset": [wv.label(i) for i in subset.sorted()],
        "delta": options.delta,
    }


def cmd_verify(options: argparse.Namespace, out: TextIO) -> int:
    mode = options.mode
    if mode in ("algebra", "martingale"):
        _raise_invalid_flags(_grid_document(options), GRID_FLAGS_SCHEMA)
        seed = _resolve_seed(options.seed)
        if mode == "algebra":
            result = check_bound_algebra(options.points, seed)
        else:
            result = check_martingale_step(options.points, seed)
        report = build_report({"points": options.points, "seed": seed}, None, result)
    elif mode == "compare":
        _raise_invalid_flags(
            _flag_document(options, "mode", "weights_file", "k", "subset_file", "order_file"),
            COMPARE_FLAGS_SCHEMA,
        )
        wv = load_weights(options.weights_file, options.k, normalize=options.normalize)
        subset = (
            load_subset(options.subset_file, wv) if options.subset_file else SubsetSpec(frozenset())
        )
        order = load_order(options.order_file, wv) if options.order_file else None
        result = compare_procedures(scale_weights(wv), order, subset)
        report = build_report(_instance(options, wv, subset), None, result)
    else:
        _raise_invalid_flags(
            _flag_document(
                options,
                "mode",
                "weights_file",
                "subset_file",
                "k",
                "delta",
                "trials",
                "seed",
                "jobs",
                "procedure",
                "order_file",
            ),
            INSTANCE_FLAGS_SCHEMA,
        )
        wv = load_weights(options.weights_file, options.k, normalize=options.normalize)
        subset = load_subset(options.subset_file, wv)
        procedure = Procedure.from_string(options.procedure)
        policy = _policy(options, wv)
        instance = _instance(options, wv, subset)
        if mode == "exact":
            if options.delta <= 0:
                raise InvalidFlags("exact verification needs --delta > 0")
            result = verify_exact(wv, subset, options.delta, procedure, policy)
        else:
            seed = _resolve_seed(options.seed)
            instance["seed"] = seed
            instance["trials"] = options.trials
            result = mc_estimate(
                procedure,
                wv,
                subset,
                options.delta,
                options.trials,
                seed,
                policy=policy,
                jobs=options.jobs,
            )
        report = build_report(instance, procedure, result)

    if options.format == "csv":
        write_csv(
            out,
            ["name", "verdict", "observed", "limit", "note"],
            (
                [v["name"], v["verdict"], v.get("observed"), v.get("limit"), v.get("note")]
                for v in report["verdicts"]
            ),
            options.precision,
        )
    elif options.format == "pretty":
        write_pretty(out, report, options.precision)
    else:
        write_json_line(out, report, options.precision)
    return EXIT_OK if report["passed"] else EXIT_FAILED


def _grid_document(options: argparse.Namespace) -> dict[str, Any]:
    return {"mode": options.mode, "points": options.points, "seed": options.seed}


COMMANDS = {
    "sample": cmd_sample,
    "bounds": cmd_bounds,
    "table": cmd_table,
    "verify": cmd_verify,
}


def _configure_logging(level: Optional[str]) -> None:
    logging.basicConfig(
        level=level or get_settings().log_level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    """
    Runs one subcommand.

    Returns: 0 on success, 1 when a verification verdict fails, 2 on invalid
        input (argparse usage errors exit with 2 as well).
    """
    options = build_parser().parse_args(argv)
    out = sys.stdout if out is None else out
    try:
        _configure_logging(options.log_level)
        if options.precision < 1:
            raise InvalidFlags(f"--precision must be positive, got {options.precision}")
        return COMMANDS[options.command](options, out)
    except PivotalError as error:
        print(f"{error.name}: {error.message}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, OSError) as error:
        print(f"{type(error).__name__}: {error}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
