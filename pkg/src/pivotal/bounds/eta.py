"""
Values of the variance proxy η fed to the bounds, and where they come from.

η itself needs the weights of A. Without them, η̄ = α − (k/m)α² bounds it from
the size m of A, and α bounds it with no information at all. Since π and π* are
increasing in η, any upper bound on η gives a valid, weaker tail bound.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional, Union

from pivotal.bounds.tails import BoundKind, fgl_pi_star, freedman_pi
from pivotal.config import get_settings
from pivotal.data.types.subset import SubsetSpec, complement, eta_exact, subset_alpha
from pivotal.data.types.weights import WeightVector
from pivotal.errors import DomainError

SubsetSize = Union[int, float]


class EtaProvenance(Enum):
    EXACT = "exact"
    ETA_BAR = "eta_bar"
    WORST_CASE_ALPHA = "worst_case_alpha"
    HALF = "half"


def _check_alpha(alpha: float) -> None:
    if math.isnan(alpha) or not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha = {alpha!r} must lie in (0, 1)")


def eta_upper_bound(alpha: float, m: SubsetSize, k: int) -> float:
    """
    Returns η̄ = α − (k/m)α², an upper bound on η for any A of relative weight α
    and size at most m. m = inf gives α.

    Args:
        alpha: The relative weight of A.
        m: An upper bound on |A|, or ``math.inf``.
        k: The sample size.

    Returns: η̄, clamped at 0 when m < kα.
    """
    _check_alpha(alpha)
    if math.isnan(m) or m <= 0:
        raise DomainError(f"m = {m!r} must be a positive size or inf")
    if k < 1:
        raise DomainError(f"k = {k!r} must be a positive integer")
    if math.isinf(m):
        return alpha
    return max(0.0, alpha - (k / m) * alpha * alpha)


def m_upper_bound(n: int, k: int, alpha: float) -> int:
    """
    Bounds |A| by n − ⌈k(1 − α)⌉: the complement of A holds weight 1 − α and
    every element weighs at most 1/k.
    """
    return n - math.ceil(k * (1.0 - alpha) - 1e-9)


def best_of_complement(
    wv: WeightVector,
    subset: SubsetSpec,
    delta: float,
    bound: BoundKind = BoundKind.FGL,
) -> float:
    """
    Evaluates π or π* at min(ηᴬ, ηᴮ), B the complement of A.

    A's upper tail is B's lower tail and both tails share one bound, so the
    smaller η of the two gives a valid bound for A.
    """
    eta = min(eta_exact(wv, subset), eta_exact(wv, complement(subset, wv.n)))
    if bound is BoundKind.FREEDMAN:
        return freedman_pi(eta, delta, wv.k)
    if bound is BoundKind.FGL:
        return fgl_pi_star(eta, delta, wv.k)
    raise DomainError(f"best-of-complement applies to freedman or fgl, not {bound.value}")


@dataclass(frozen=True)
class BoundInputs:
    """
    The arguments of every bound for one subset.

    Attributes:
        alpha: Relative weight of A; 0 and 1 describe an empty or full subset.
        delta: Deviation of the sample fraction.
        k: Sample size.
        eta: The η used by π and π*.
        provenance: How eta was obtained.
        m: The size bound behind an η̄ value.
        complement_used: Whether eta is the complement's η.
    """

    alpha: float
    delta: float
    k: int
    eta: float
    provenance: EtaProvenance
    m: Optional[SubsetSize] = None
    complement_used: bool = False

    def __post_init__(self) -> None:
        if math.isnan(self.alpha) or not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha = {self.alpha!r} must lie in [0, 1]")
        if math.isnan(self.delta) or self.delta < 0:
            raise DomainError(f"delta = {self.delta!r} must be nonnegative")
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise DomainError(f"k must be a positive integer, got {self.k!r}")
        if math.isnan(self.eta) or self.eta < 0:
            raise DomainError(f"eta = {self.eta!r} must be nonnegative")
        # η = 1/2 bounds min(ηᴬ, ηᴮ), not ηᴬ, so it may exceed α.
        if self.provenance is not EtaProvenance.HALF:
            slack = get_settings().sum_tolerance
            if self.eta > self.alpha + slack:
                raise DomainError(f"eta = {self.eta!r} exceeds alpha = {self.alpha!r}")
            object.__setattr__(self, "eta", min(self.eta, self.alpha))

    @staticmethod
    def exact(
        wv: WeightVector, subset: SubsetSpec, delta: float, best_of_complement: bool = False
    ) -> "BoundInputs":
        alpha = subset_alpha(wv, subset)
        eta = eta_exact(wv, subset)
        complement_used = False
        if best_of_complement:
            eta_b = eta_exact(wv, complement(subset, wv.n))
            if eta_b < eta:
                eta, complement_used = eta_b, True
        return BoundInputs(
            alpha=alpha,
            delta=delta,
            k=wv.k,
            eta=eta,
            provenance=EtaProvenance.EXACT,
            complement_used=complement_used,
        )

    @staticmethod
    def eta_bar(alpha: float, delta: float, k: int, m: SubsetSize) -> "BoundInputs":
        if math.isinf(m):
            return BoundInputs.worst_case(alpha, delta, k)
        return BoundInputs(
            alpha=alpha,
            delta=delta,
            k=k,
            eta=eta_upper_bound(alpha, m, k),
            provenance=EtaProvenance.ETA_BAR,
            m=m,
        )

    @staticmethod
    def worst_case(alpha: float, delta: float, k: int) -> "BoundInputs":
        return BoundInputs(
            alpha=alpha,
            delta=delta,
            k=k,
            eta=alpha,
            provenance=EtaProvenance.WORST_CASE_ALPHA,
            m=math.inf,
        )

    @staticmethod
    def half(alpha: float, delta: float, k: int) -> "BoundInputs":
        return BoundInputs(alpha=alpha, delta=delta, k=k, eta=0.5, provenance=EtaProvenance.HALF)

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "delta": self.delta,
            "k": self.k,
            "eta": self.eta,
            "provenance": self.provenance.value,
            "m": None if self.m is None else ("inf" if math.isinf(self.m) else self.m),
            "complement_used": self.complement_used,
        }


def bound_inputs(
    delta: float,
    k: Optional[int] = None,
    alpha: Optional[float] = None,
    m: Optional[SubsetSize] = None,
    wv: Optional[WeightVector] = None,
    subset: Optional[SubsetSpec] = None,
    best_of_complement: bool = False,
    uniform: bool = False,
) -> BoundInputs:
    """
    Picks the most precise η the given information allows.

    Exact η when weights and a subset are given, η̄ when a size bound m is
    given, η = 1/2 for the uniform bound, α otherwise.
    """
    if wv is not None and subset is not None:
        return BoundInputs.exact(wv, subset, delta, best_of_complement)
    if alpha is None or k is None:
        raise DomainError("alpha and k are required without a weight vector and subset")
    if uniform:
        return BoundInputs.half(alpha, delta, k)
    if m is not None:
        return BoundInputs.eta_bar(alpha, delta, k, m)
    return BoundInputs.worst_case(alpha, delta, k)
