"""
Kullback–Leibler divergence between Bernoulli laws and its quadratic lower bounds.
"""

import math

from scipy.special import rel_entr

from pivotal.errors import DomainError

# (2/3)² · C(1/3): the constant of the refined uniform relaxation exp(−γδ²k).
REFINED_GAMMA = 4.0 * math.log(2.0) / 3.0

PINSKER_GAMMA = 8.0 / 9.0


def _check_probability(name: str, value: float, open_interval: bool) -> None:
    if math.isnan(value):
        raise DomainError(f"{name} is NaN")
    if open_interval and not 0.0 < value < 1.0:
        raise DomainError(f"{name} = {value!r} must lie in (0, 1)")
    if not open_interval and not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} = {value!r} must lie in [0, 1]")


def kl_divergence(q: float, p: float) -> float:
    """
    Returns D(q‖p) = q·ln(q/p) + (1 − q)·ln((1 − q)/(1 − p)), with 0·ln 0 = 0.

    Args:
        q: The success probability of the first law, in [0, 1].
        p: The success probability of the reference law, in (0, 1).

    Returns: The divergence, never negative.
    """
    _check_probability("q", q, open_interval=False)
    _check_probability("p", p, open_interval=True)
    return max(0.0, float(rel_entr(q, p) + rel_entr(1.0 - q, 1.0 - p)))


def pinsker_constant(p: float) -> float:
    """
    Returns C(p) = ln((1 − p)/p)/(1 − 2p), the best constant in D(q‖p) ≥ C(p)(q − p)².

    C is symmetric about 1/2 where it reaches its minimum 2, which is Pinsker's
    inequality; p = 1/2 returns that limit.
    """
    _check_probability("p", p, open_interval=True)
    if p == 0.5:
        return 2.0
    spread = 1.0 - 2.0 * p
    return math.log1p(spread / p) / spread
