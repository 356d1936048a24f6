from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional


class Verdict(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    # Reported for comparison only; never fails a run.
    REFERENCE = "REFERENCE"
    FINDING = "FINDING"

    @staticmethod
    def of(holds: bool) -> "Verdict":
        return Verdict.PASS if holds else Verdict.FAIL


@dataclass(frozen=True)
class Check:
    """
    The outcome of one verification check.

    Attributes:
        name: What was checked.
        verdict: The outcome.
        observed: The measured quantity.
        limit: The value it was compared against.
        note: Context for a reader of the report.
    """

    name: str
    verdict: Verdict
    observed: Optional[float] = None
    limit: Optional[float] = None
    note: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.verdict is Verdict.FAIL

    def to_dict(self) -> dict[str, Any]:
        record: dict[str, Any] = {"name": self.name, "verdict": self.verdict.value}
        if self.observed is not None:
            record["observed"] = self.observed
        if self.limit is not None:
            record["limit"] = self.limit
        if self.note is not None:
            record["note"] = self.note
        return record


def bounded(name: str, observed: float, limit: float, slack: float = 0.0) -> Check:
    return Check(name, Verdict.of(observed <= limit + slack), observed, limit)
