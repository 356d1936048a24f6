from dataclasses import dataclass
from typing import Any, Optional

from pivotal.data.types.procedure import Procedure
from pivotal.data.types.trace import TrajectoryTrace
from pivotal.data.types.weights import WeightVector


@dataclass(frozen=True)
class SampleResult:
    """
    Represents the outcome of one sampler run.

    Attributes:
        sample: The k selected indices.
        seed: The seed of the random source used.
        stream_id: The stream of the random source used.
        procedure: The procedure that produced the sample.
        steps: Number of pivotal steps taken (collapsed rounds count once each for X**).
        rounds: Number of times a coordinate reached 1.
        trace: The trajectory, when tracing was requested.
    """

    sample: frozenset[int]
    seed: int
    stream_id: int
    procedure: Procedure
    steps: int
    rounds: int
    trace: Optional[TrajectoryTrace] = None

    def sorted(self) -> list[int]:
        return sorted(self.sample)

    def to_record(self, wv: Optional[WeightVector] = None) -> dict[str, Any]:
        """
        Builds the JSON-line record of the sample, labelled by ids when a weight
        vector with ids is given.
        """
        labels: list[Any] = self.sorted()
        if wv is not None and wv.ids is not None:
            labels = [wv.label(i) for i in labels]
        record: dict[str, Any] = {
            "seed": self.seed,
            "stream": self.stream_id,
            "procedure": self.procedure.value,
            "sample": labels,
            "rounds": self.rounds,
            "steps": self.steps,
        }
        if self.trace is not None:
            record["trace"] = self.trace.to_dict()
        return record
