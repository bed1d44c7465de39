"""
Sequential Regressor Base
Predict/update abstraction with a declared output clamp
"""

from abc import ABC, abstractmethod
from typing import Tuple

import numpy as np


class SequentialRegressor(ABC):
    """
    Online regressor whose predictions at step t use only updates 1..t-1.

    predict() never changes state; every prediction is clamped to [lo, hi].
    """

    def __init__(self, lo: float, hi: float, default: float):
        if not lo <= hi:
            raise ValueError(f"clamp range must satisfy lo <= hi, got [{lo}, {hi}]")
        self.lo = float(lo)
        self.hi = float(hi)
        self.default = float(min(max(default, self.lo), self.hi))
        self.n_updates = 0

    @property
    def clamp_range(self) -> Tuple[float, float]:
        return (self.lo, self.hi)

    def clamp(self, value: float) -> float:
        return min(max(float(value), self.lo), self.hi)

    def predict(self, x: np.ndarray) -> float:
        """Clamped prediction at x; a pure read"""
        return self.clamp(self._predict(np.asarray(x, dtype=float)))

    def update(self, x: np.ndarray, target: float) -> "SequentialRegressor":
        """Incorporate one (x, target) pair"""
        self._update(np.asarray(x, dtype=float), float(target))
        self.n_updates += 1
        return self

    @abstractmethod
    def _predict(self, x: np.ndarray) -> float:
        ...

    @abstractmethod
    def _update(self, x: np.ndarray, target: float) -> None:
        ...
