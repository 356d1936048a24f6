from typing import Optional

from pivotal.data.models import SampleResult
from pivotal.data.types.subset import SubsetSpec
from pivotal.sampling.random_source import RandomSource


class SamplerTemplate:
    def sample(
        self,
        rng: RandomSource,
        trace_subset: Optional[SubsetSpec] = None,
        trace: bool = False,
    ) -> SampleResult:
        """Draws one sample of size k.

        Args:
            rng: The random source of the run.
            trace_subset: Records conditional variances and snapshots for this subset.
            trace: Records the trajectory even without a tracked subset.

        Example:
            sampler.sample(RandomSource(seed=7))
        """
        raise NotImplementedError(f"sample not implemented for: {self}")

    def sample_many(self, seed: int, count: int, first_stream: int = 0) -> list[SampleResult]:
        """Draws ``count`` samples on consecutive streams of one seed.

        Args:
            seed: The seed shared by every run.
            count: The number of samples.
            first_stream: The stream id of the first run.

        Example:
            sampler.sample_many(seed=7, count=10)
        """
        raise NotImplementedError(f"sample_many not implemented for: {self}")
