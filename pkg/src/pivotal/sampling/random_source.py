"""
Seeded, splittable sources of unit-interval variates.
"""

from dataclasses import dataclass

import numpy as np

from pivotal.data.types.constants import MAX_SEED
from pivotal.errors import DomainError


@dataclass(frozen=True)
class RandomSource:
    """
    Identifies a reproducible stream of variates.

    The same (seed, stream_id) always yields the same sequence; distinct
    stream ids are spawned as independent children of one ``SeedSequence``.

    Attributes:
        seed: A 64-bit seed.
        stream_id: A 64-bit stream number, one per independent replication.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        for name in ("seed", "stream_id"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise DomainError(f"{name} must be an integer, got {value!r}")
            if not 0 <= int(value) < MAX_SEED:
                raise DomainError(f"{name} must lie in [0, 2**64), got {value!r}")

    def generator(self) -> np.random.Generator:
        """
        Returns a fresh generator positioned at the start of the stream.
        """
        sequence = np.random.SeedSequence(
            entropy=int(self.seed), spawn_key=(int(self.stream_id),)
        )
        return np.random.Generator(np.random.PCG64(sequence))

    def stream(self, stream_id: int) -> "RandomSource":
        return RandomSource(seed=self.seed, stream_id=stream_id)


def fresh_seed() -> int:
    """
    Draws a new 64-bit seed from OS entropy.
    """
    return int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])
