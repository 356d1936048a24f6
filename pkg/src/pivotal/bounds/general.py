"""
Tail inequalities for a martingale with increments bounded by 1, stated in terms
of the deviation c, the accumulated conditional variance v and the number of
steps T.

Every function works on the logarithm of the bound and exponentiates once, so
large T underflows to 0 only when the bound itself does.
"""

import math

from scipy.special import xlogy

from pivotal.bounds.divergence import kl_divergence
from pivotal.errors import DomainError


def _check_nonnegative(**values: float) -> None:
    for name, value in values.items():
        if math.isnan(value) or value < 0:
            raise DomainError(f"{name} = {value!r} must be a nonnegative real")


def _check_steps(T: float) -> None:
    if math.isnan(T) or T <= 0:
        raise DomainError(f"T = {T!r} must be positive")


def clamp_exp(log_value: float) -> float:
    """exp of a log-bound, clamped to [0, 1]."""
    if log_value >= 0.0:
        return 1.0
    return math.exp(log_value)


def chernoff_general(p: float, c: float, T: float) -> float:
    """
    Chernoff–Hoeffding bound for a sum of T i.i.d. Bernoulli(p) variables
    exceeding its mean by c: exp(−T·D(p + c/T‖p)).

    Returns 0 when p + c/T > 1, since the tail is empty.
    """
    _check_nonnegative(c=c)
    _check_steps(T)
    if not 0.0 < p < 1.0:
        raise DomainError(f"p = {p!r} must lie in (0, 1)")
    q = p + c / T
    if q > 1.0:
        return 0.0
    return clamp_exp(-T * kl_divergence(q, p))


def azuma_general(c: float, T: float) -> float:
    """Azuma–Hoeffding: exp(−(c²/2)/T)."""
    _check_nonnegative(c=c)
    _check_steps(T)
    return clamp_exp(-0.5 * c * c / T)


def log_freedman(v: float, c: float) -> float:
    if c == 0.0:
        return 0.0
    if v == 0.0:
        return -math.inf
    return c - (v + c) * math.log1p(c / v)


def freedman_general(v: float, c: float) -> float:
    """
    Freedman's inequality: min(1, (v/(v + c))^{v+c}·e^c).

    v = 0 is the deterministic limit: 0 for c > 0, 1 for c = 0.
    """
    _check_nonnegative(v=v, c=c)
    return clamp_exp(log_freedman(v, c))


def freedman_simplified(v: float, c: float) -> float:
    """
    The Bernstein-type relaxation exp(−(c²/2)/(v + c/3)) of Freedman's inequality.
    """
    _check_nonnegative(v=v, c=c)
    if c == 0.0:
        return 1.0
    return clamp_exp(-0.5 * c * c / (v + c / 3.0))


def log_fgl(v: float, c: float, T: float) -> float:
    if c == 0.0:
        return 0.0
    if v == 0.0:
        return -math.inf
    p = v / (v + T)
    q = min(1.0, (v + c) / (v + T))
    return -T * kl_divergence(q, p)


def fgl_general(v: float, c: float, T: float) -> float:
    """
    Fan–Grama–Liu inequality: exp(−T·D((v + c)/(v + T)‖v/(v + T))).

    For c > T the first argument of D is capped at 1, which keeps the bound valid.

    Args:
        v: The bound on the accumulated conditional variance.
        c: The deviation.
        T: The number of steps.

    Returns: The bound, in [0, 1].
    """
    _check_nonnegative(v=v, c=c)
    _check_steps(T)
    return clamp_exp(log_fgl(v, c, T))


def fgl_product_form(v: float, c: float, T: float) -> float:
    """
    The product form [(v/(v + c))^{v+c}·(T/(T − c))^{T−c}]^{T/(v+T)} of fgl_general.
    """
    _check_nonnegative(v=v, c=c)
    _check_steps(T)
    if c > T:
        raise DomainError(f"c = {c!r} exceeds T = {T!r}; the product form needs c ≤ T")
    if c == 0.0:
        return 1.0
    if v == 0.0:
        return 0.0
    exponent = -float(xlogy(v + c, (v + c) / v)) - float(xlogy(T - c, (T - c) / T))
    return clamp_exp(T / (v + T) * exponent)


def bernoulli_reduction(p: float, c: float, T: float) -> float:
    """
    Applies fgl_general to the centred sum of T i.i.d. Bernoulli(p) variables,
    rescaled by 1/(1 − p) so that its increments are bounded by 1:
    v = Tp/(1 − p) and deviation c/(1 − p). The result is chernoff_general(p, c, T).
    """
    if not 0.0 < p < 1.0:
        raise DomainError(f"p = {p!r} must lie in (0, 1)")
    _check_nonnegative(c=c)
    _check_steps(T)
    if p + c / T > 1.0:
        return 0.0
    return fgl_general(T * p / (1.0 - p), c / (1.0 - p), T)
