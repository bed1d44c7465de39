"""
Rejection-Time CDF
Empirical CDF of rejection times on a grid with pointwise Wilson intervals
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import norm

from src.utils.errors import InvalidInput

CDF_FIELDS = ["t", "fraction_rejected", "wilson_lo", "wilson_hi"]

WILSON_Z = float(norm.ppf(0.975))


def wilson(k: int, n: int, z: float = WILSON_Z) -> Tuple[float, float]:
    """Wilson score interval for k successes out of n"""
    if n < 1 or not 0 <= k <= n:
        raise InvalidInput("wilson needs n >= 1 and 0 <= k <= n", {"k": k, "n": n})
    p = k / n
    z2 = z * z
    denom = 1.0 + z2 / n
    center = (p + z2 / (2.0 * n)) / denom
    half = z * np.sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom
    lo = 0.0 if k == 0 else max(0.0, float(center - half))
    hi = 1.0 if k == n else min(1.0, float(center + half))
    return lo, hi


@dataclass(frozen=True, slots=True)
class CdfRow:
    t: int
    fraction_rejected: float
    wilson_lo: float
    wilson_hi: float

    def to_row(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "fraction_rejected": self.fraction_rejected,
            "wilson_lo": self.wilson_lo,
            "wilson_hi": self.wilson_hi,
        }


@dataclass(frozen=True)
class CdfTable:
    rows: Tuple[CdfRow, ...]

    def check(self) -> "CdfTable":
        """Fractions nondecreasing in t and bracketed by their intervals"""
        previous = 0.0
        for row in self.rows:
            if row.fraction_rejected < previous:
                raise InvalidInput("CDF must be nondecreasing", {"t": row.t})
            if not row.wilson_lo <= row.fraction_rejected <= row.wilson_hi:
                raise InvalidInput("Wilson interval must bracket the fraction", {"t": row.t})
            previous = row.fraction_rejected
        return self

    def fraction_at(self, t: int) -> float:
        """Fraction at the largest grid point <= t (0 before the grid starts)"""
        value = 0.0
        for row in self.rows:
            if row.t > t:
                break
            value = row.fraction_rejected
        return value

    def to_rows(self) -> List[Dict[str, Any]]:
        return [row.to_row() for row in self.rows]


def cdf_grid(horizon: int, stride: int) -> List[int]:
    """stride, 2 stride, ..., always ending at horizon"""
    if horizon < 1 or stride < 1:
        raise InvalidInput("horizon and stride must be >= 1", {"horizon": horizon, "stride": stride})
    grid = list(range(stride, horizon + 1, stride))
    if not grid or grid[-1] != horizon:
        grid.append(horizon)
    return grid


def ecdf(times: Sequence[Optional[int]], grid: Sequence[int]) -> CdfTable:
    """
    fraction(t) = #{n_f <= t} / R, where None (never rejected) counts as
    larger than every t.
    """
    grid = list(grid)
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise InvalidInput("grid must be sorted ascending")
    n = len(times)
    if n == 0:
        raise InvalidInput("need at least one replicate")
    finite = np.sort(np.array([t for t in times if t is not None], dtype=float))
    counts = np.searchsorted(finite, np.asarray(grid, dtype=float), side="right")
    rows = []
    for t, k in zip(grid, counts):
        lo, hi = wilson(int(k), n)
        rows.append(CdfRow(t=int(t), fraction_rejected=int(k) / n, wilson_lo=lo, wilson_hi=hi))
    return CdfTable(tuple(rows)).check()
