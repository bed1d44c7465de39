"""
Fixed-Function Regressors
Oracle (known function) and constant / running-mean predictors
"""

import math
from typing import Callable, Optional

import numpy as np

from src.services.regression.base import SequentialRegressor


class OracleRegressor(SequentialRegressor):
    """Predicts a known function; updates are no-ops"""

    def __init__(self, func: Callable[[np.ndarray], float], lo: float = -math.inf, hi: float = math.inf):
        super().__init__(lo, hi, default=0.0 if lo <= 0.0 <= hi else lo)
        self.func = func

    def _predict(self, x: np.ndarray) -> float:
        return float(self.func(x))

    def _update(self, x: np.ndarray, target: float) -> None:
        return None


def oracle_regressor(
    func: Callable[[np.ndarray], float], lo: float = -math.inf, hi: float = math.inf
) -> OracleRegressor:
    return OracleRegressor(func, lo, hi)


class ConstantRegressor(SequentialRegressor):
    """
    Context-free predictor: a pinned value when given, otherwise the running
    mean of the targets seen so far (default before any data).
    """

    def __init__(self, lo: float, hi: float, default: float, value: Optional[float] = None):
        super().__init__(lo, hi, default)
        self.value = value
        self._sum = 0.0

    def _predict(self, x: np.ndarray) -> float:
        if self.value is not None:
            return self.value
        if self.n_updates == 0:
            return self.default
        return self._sum / self.n_updates

    def _update(self, x: np.ndarray, target: float) -> None:
        self._sum += target
