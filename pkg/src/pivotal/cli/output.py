"""
Rendering of command results as JSON lines, CSV or indented text.
"""

import csv
import enum
import json
import math
from collections.abc import Callable, Iterable, Sequence
from fractions import Fraction
from typing import Any, TextIO

from pivotal.data.types.constants import DEFAULT_PRECISION

default_encoders: dict[type, Callable[[Any], Any]] = {
    frozenset: sorted,
    set: sorted,
    tuple: list,
    Fraction: float,
}


class DefaultEncoder(json.JSONEncoder):
    def default(self, v: Any) -> Any:
        encoder = default_encoders.get(v.__class__)
        if encoder:
            return encoder(v)
        if isinstance(v, enum.Enum):
            return v.value
        if hasattr(v, "to_dict"):
            return v.to_dict()
        if hasattr(v, "item"):
            # numpy scalars
            return v.item()
        return json.JSONEncoder.default(self, v)


def round_significant(value: Any, precision: int = DEFAULT_PRECISION) -> Any:
    """
    Rounds every float inside ``value`` to ``precision`` significant digits.

    Infinite values become the string "inf"; JSON has no literal for them.
    """
    if isinstance(value, bool) or isinstance(value, int):
        return value
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return float(f"{value:.{precision}g}")
    if isinstance(value, dict):
        return {key: round_significant(item, precision) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_significant(item, precision) for item in value]
    return value


def write_json_line(out: TextIO, document: Any, precision: int) -> None:
    json.dump(
        round_significant(document, precision),
        out,
        cls=DefaultEncoder,
        ensure_ascii=False,
        separators=(",", ":"),
    )
    out.write("\n")


def write_pretty(out: TextIO, document: Any, precision: int) -> None:
    json.dump(
        round_significant(document, precision),
        out,
        cls=DefaultEncoder,
        ensure_ascii=False,
        indent=2,
    )
    out.write("\n")


def write_csv(out: TextIO, header: Sequence[str], rows: Iterable[Sequence[Any]], precision: int) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(item, precision) for item in row])


def _cell(item: Any, precision: int) -> Any:
    rounded = round_significant(item, precision)
    if isinstance(rounded, list):
        return " ".join(str(part) for part in rounded)
    if rounded is None:
        return ""
    return rounded


def format_table(
    header: Sequence[str], rows: Iterable[Sequence[Any]], precision: int
) -> list[str]:
    """
    Lays out rows as aligned text columns, numbers at ``precision`` significant digits.
    """
    cells = [list(header)]
    for row in rows:
        cells.append(
            [f"{item:.{precision}g}" if isinstance(item, float) else str(item) for item in row]
        )
    widths = [max(len(line[c]) for line in cells) for c in range(len(header))]
    lines = []
    for line in cells:
        first = line[0].ljust(widths[0])
        rest = [cell.rjust(width) for cell, width in zip(line[1:], widths[1:])]
        lines.append("  ".join([first, *rest]).rstrip())
    return lines
