"""Result records shared by the hypergeometric and Fredholm routes."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional


class GapMethod(str, enum.Enum):
    DETERMINANT = "Determinant"
    CORRELATION_SERIES = "CorrelationSeries"
    HYPERGEOMETRIC = "Hypergeometric"
    INTERRELATION = "Interrelation"


# discretization may overshoot 1 by this much
GAP_OVERSHOOT = 1e-9


@dataclass(frozen=True)
class GapValue:
    """A gap probability together with how it was obtained.

    ``err_estimate`` is the discrepancy between two resolutions for the
    determinant routes and the size of the last summed level for the series
    route.
    """

    value: float
    method: GapMethod
    nodes_used: int = 0
    series_k_used: Optional[int] = None
    err_estimate: float = 0.0

    def __float__(self) -> float:
        return float(self.value)

    def in_range(self) -> bool:
        return 0.0 <= self.value <= 1.0 + GAP_OVERSHOOT
