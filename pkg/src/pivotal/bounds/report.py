import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from pivotal.bounds.eta import BoundInputs, SubsetSize, eta_upper_bound
from pivotal.bounds.tails import (
    BoundKind,
    azuma_bound,
    chernoff_bound,
    fgl_pi_star,
    freedman_pi,
    freedman_pi_simplified,
    hoeffding_simple,
)


class TailSide(Enum):
    UPPER = "upper_tail"
    LOWER = "lower_tail"

    @staticmethod
    def from_string(side: str) -> "TailSide":
        normalized = side.strip().lower()
        if normalized in ("upper", "upper_tail"):
            return TailSide.UPPER
        if normalized in ("lower", "lower_tail"):
            return TailSide.LOWER
        raise ValueError(f"unknown tail side {side!r}")


@dataclass(frozen=True)
class BoundReport:
    """
    Every bound on one tail of (1/k)|S ∩ A|, evaluated at the same inputs.

    Attributes:
        side: The tail, {≥ α + δ} or {≤ α − δ}.
        inputs: The arguments the bounds were evaluated at.
        chernoff: With-replacement reference.
        hoeffding_simple: exp(−2δ²k).
        azuma: exp(−δ²k/2).
        freedman: π(η, δ, k).
        freedman_simplified: The Bernstein relaxation of π.
        fgl: π*(η, δ, k).
        notes: Remarks such as an empty tail.
    """

    side: TailSide
    inputs: BoundInputs
    chernoff: float
    hoeffding_simple: float
    azuma: float
    freedman: float
    freedman_simplified: float
    fgl: float
    notes: tuple[str, ...] = ()

    def value(self, kind: BoundKind) -> float:
        return float(getattr(self, kind.value))

    def values(self) -> dict[str, float]:
        return {kind.value: self.value(kind) for kind in BoundKind}

    def to_dict(self) -> dict[str, Any]:
        return {
            "side": self.side.value,
            "inputs": self.inputs.to_dict(),
            "bounds": self.values(),
            "notes": list(self.notes),
        }


def _chernoff_tail(alpha: float, delta: float, k: int) -> float:
    if alpha in (0.0, 1.0):
        # kα elements of A are drawn on every run.
        return 1.0 if delta == 0.0 else 0.0
    return chernoff_bound(alpha, delta, k)


def evaluate_bounds(inputs: BoundInputs, side: TailSide = TailSide.UPPER) -> BoundReport:
    """
    Evaluates every bound on the requested tail.

    The lower tail of A is the upper tail of its complement, so the Chernoff
    bound is taken at 1 − α there; π and π* are the same on both tails.
    A tail lying outside [0, 1] is empty and every bound is reported as 0.
    """
    alpha, delta, k = inputs.alpha, inputs.delta, inputs.k
    target = alpha + delta if side is TailSide.UPPER else alpha - delta
    if delta > 0 and not 0.0 <= target <= 1.0:
        return BoundReport(
            side=side,
            inputs=inputs,
            chernoff=0.0,
            hoeffding_simple=0.0,
            azuma=0.0,
            freedman=0.0,
            freedman_simplified=0.0,
            fgl=0.0,
            notes=(f"empty tail: the fraction cannot reach {target:.6g}",),
        )
    reference = alpha if side is TailSide.UPPER else 1.0 - alpha
    return BoundReport(
        side=side,
        inputs=inputs,
        chernoff=_chernoff_tail(reference, delta, k),
        hoeffding_simple=hoeffding_simple(delta, k),
        azuma=azuma_bound(delta, k),
        freedman=freedman_pi(inputs.eta, delta, k),
        freedman_simplified=freedman_pi_simplified(inputs.eta, delta, k),
        fgl=fgl_pi_star(inputs.eta, delta, k),
    )


def _m_label(m: SubsetSize) -> str:
    return "inf" if math.isinf(m) else str(int(m))


@dataclass(frozen=True)
class DeviationTable:
    """
    Upper-tail bounds for one (k, α, δ) across size bounds m of A.

    Attributes:
        k: Sample size.
        alpha: Relative weight of A.
        delta: Deviation.
        m_list: The size bounds, one column each.
        rows: Row label to one value per column.
    """

    k: int
    alpha: float
    delta: float
    m_list: tuple[SubsetSize, ...]
    rows: dict[str, tuple[float, ...]] = field(default_factory=dict)

    @property
    def columns(self) -> list[str]:
        return [f"m={_m_label(m)}" for m in self.m_list]

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "alpha": self.alpha,
            "delta": self.delta,
            "columns": self.columns,
            "rows": {label: list(values) for label, values in self.rows.items()},
        }


WITH_REPLACEMENT = "with-replacement"
PROCEDURE_X = "X"
PROCEDURE_X_STAR = "X*"


def deviation_table(
    k: int = 100,
    alpha: float = 0.2,
    delta: float = 2.0 / 15.0,
    m_list: Iterable[SubsetSize] = (math.inf, 1000, 100, 50),
) -> DeviationTable:
    """
    Tabulates the with-replacement bound, π for Procedure X and π* for
    Procedure X*, with η = η̄(α, m) in column m.

    Args:
        k: Sample size.
        alpha: Relative weight of A.
        delta: Deviation.
        m_list: Size bounds on A; ``math.inf`` for no information.

    Returns: The three-row table.
    """
    columns: Sequence[SubsetSize] = tuple(m_list)
    etas = [eta_upper_bound(alpha, m, k) for m in columns]
    with_replacement = chernoff_bound(alpha, delta, k)
    return DeviationTable(
        k=k,
        alpha=alpha,
        delta=delta,
        m_list=tuple(columns),
        rows={
            WITH_REPLACEMENT: tuple(with_replacement for _ in columns),
            PROCEDURE_X: tuple(freedman_pi(eta, delta, k) for eta in etas),
            PROCEDURE_X_STAR: tuple(fgl_pi_star(eta, delta, k) for eta in etas),
        },
    )
