"""
Tail bounds for the fraction (1/k)|S ∩ A| of a sample of size k that falls in a
subset A of relative weight α, at deviation δ.

With replacement the count is binomial and the Chernoff bound applies. Without
replacement, Procedure X is bounded by π(η, δ, k) and Procedure X* by
π*(η, δ, k), where η = α − kΣ_{i∈A}(wⁱ)². Both tails share the same π and π*.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from scipy.optimize import brentq

from pivotal.bounds.divergence import PINSKER_GAMMA, REFINED_GAMMA, kl_divergence
from pivotal.bounds.general import clamp_exp, log_fgl, log_freedman
from pivotal.errors import DomainError


class BoundKind(Enum):
    CHERNOFF = "chernoff"
    HOEFFDING = "hoeffding_simple"
    AZUMA = "azuma"
    FREEDMAN = "freedman"
    FREEDMAN_SIMPLIFIED = "freedman_simplified"
    FGL = "fgl"

    @staticmethod
    def from_string(kind: str) -> "BoundKind":
        normalized = kind.strip().lower().replace("-", "_")
        aliases = {"pi": "freedman", "pi_star": "fgl", "pi*": "fgl", "hoeffding": "hoeffding_simple"}
        return BoundKind(aliases.get(normalized, normalized))


def _check_sizes(delta: float, k: float) -> None:
    if math.isnan(delta) or delta < 0:
        raise DomainError(f"delta = {delta!r} must be nonnegative")
    if math.isnan(k) or k <= 0:
        raise DomainError(f"k = {k!r} must be positive")


def _check_eta(eta: float) -> None:
    if math.isnan(eta) or eta < 0:
        raise DomainError(f"eta = {eta!r} must be nonnegative")


def chernoff_bound(alpha: float, delta: float, k: float) -> float:
    """
    Sampling with replacement: exp(−D(α + δ‖α)·k), and 0 once α + δ > 1.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha = {alpha!r} must lie in (0, 1)")
    _check_sizes(delta, k)
    q = alpha + delta
    if q > 1.0:
        return 0.0
    return clamp_exp(-k * kl_divergence(q, alpha))


def hoeffding_simple(delta: float, k: float) -> float:
    return clamp_exp(-2.0 * delta * delta * k)


def azuma_bound(delta: float, k: float) -> float:
    return clamp_exp(-0.5 * delta * delta * k)


def log_freedman_pi(eta: float, delta: float, k: float) -> float:
    return k * log_freedman(eta, delta)


def freedman_pi(eta: float, delta: float, k: float) -> float:
    """
    π(η, δ, k) = [(η/(η + δ))^{η+δ}·e^δ]^k, the bound for Procedure X.

    η = 0 is the deterministic-inclusion limit: 0 for δ > 0 and 1 for δ = 0.

    Args:
        eta: The variance proxy of the subset.
        delta: The deviation of the sample fraction.
        k: The sample size.

    Returns: The bound, in [0, 1].
    """
    _check_eta(eta)
    _check_sizes(delta, k)
    return clamp_exp(log_freedman_pi(eta, delta, k))


def freedman_pi_simplified(eta: float, delta: float, k: float) -> float:
    """exp(−(δ²/2)/(η + δ/3)·k), the Bernstein relaxation of π."""
    _check_eta(eta)
    _check_sizes(delta, k)
    if delta == 0.0:
        return 1.0
    return clamp_exp(-0.5 * delta * delta / (eta + delta / 3.0) * k)


def log_fgl_pi_star(eta: float, delta: float, k: float) -> float:
    # T = k steps, v = kη, c = kδ; the common factor k cancels inside D.
    return log_fgl(eta, delta, 1.0) * k


def fgl_pi_star(eta: float, delta: float, k: float) -> float:
    """
    π*(η, δ, k) = exp(−D((η + δ)/(1 + η)‖η/(1 + η))·k), the bound for Procedure X*.

    The first argument of D is capped at 1 once δ ≥ 1.
    """
    _check_eta(eta)
    _check_sizes(delta, k)
    return clamp_exp(log_fgl_pi_star(eta, delta, k))


@dataclass(frozen=True)
class UniformBound:
    """
    π*(1/2, δ, k), valid for every subset, with its closed-form relaxations.

    Attributes:
        value: π*(1/2, δ, k).
        pinsker_relaxation: exp(−(8/9)δ²k).
        refined_relaxation: exp(−γδ²k) with γ = 4·ln2/3, when requested.
    """

    value: float
    pinsker_relaxation: float
    refined_relaxation: Optional[float] = None

    @property
    def holds(self) -> bool:
        """Whether value ≤ refined ≤ pinsker, up to rounding."""
        slack = 1e-12
        chain = [self.value]
        if self.refined_relaxation is not None:
            chain.append(self.refined_relaxation)
        chain.append(self.pinsker_relaxation)
        return all(a <= b + slack for a, b in zip(chain, chain[1:]))


def uniform_bound(delta: float, k: float, refined: bool = False) -> UniformBound:
    _check_sizes(delta, k)
    square = delta * delta * k
    return UniformBound(
        value=fgl_pi_star(0.5, delta, k),
        pinsker_relaxation=clamp_exp(-PINSKER_GAMMA * square),
        refined_relaxation=clamp_exp(-REFINED_GAMMA * square) if refined else None,
    )


def required_delta(eta: float, k: float, target: float, kind: BoundKind = BoundKind.FGL) -> float:
    """
    Returns the smallest δ at which π (kind FREEDMAN) or π* (kind FGL) falls to ``target``.

    Both bounds equal 1 at δ = 0 and decrease in δ. π* stops decreasing at δ = 1,
    so a target below π*(η, 1, k) is unreachable and returns inf.

    Args:
        eta: The variance proxy.
        k: The sample size.
        target: The probability to reach, in (0, 1].
        kind: Which bound to invert.

    Returns: The deviation δ.
    """
    _check_eta(eta)
    _check_sizes(0.0, k)
    if math.isnan(target) or not 0.0 < target <= 1.0:
        raise DomainError(f"target = {target!r} must lie in (0, 1]")
    if target == 1.0:
        return 0.0
    if kind is BoundKind.FREEDMAN:
        log_bound = log_freedman_pi
    elif kind is BoundKind.FGL:
        log_bound = log_fgl_pi_star
    else:
        raise DomainError(f"required_delta inverts freedman or fgl, not {kind.value}")
    if eta == 0.0:
        return 0.0

    log_target = math.log(target)
    upper = 1.0
    while log_bound(eta, upper, k) > log_target:
        if kind is BoundKind.FGL:
            return math.inf
        upper *= 2.0
    return float(
        brentq(lambda d: log_bound(eta, d, k) - log_target, 0.0, upper, xtol=1e-14, rtol=1e-12)
    )
