"""
Clipped Variance Regressor
Wraps a regressor of squared residuals and clips its output to [l, v_max]
"""

import numpy as np

from src.services.regression.base import SequentialRegressor


class ClippedVarianceRegressor(SequentialRegressor):
    """v_hat(x) = max(min(v_tilde(x), v_max), l)"""

    def __init__(self, inner: SequentialRegressor, floor: float, ceiling: float):
        if not 0 < floor < ceiling:
            raise ValueError(f"need 0 < floor < ceiling, got floor={floor}, ceiling={ceiling}")
        super().__init__(floor, ceiling, default=ceiling)
        self.inner = inner
        self.floor = floor
        self.ceiling = ceiling

    def _predict(self, x: np.ndarray) -> float:
        return clipped_variance_predict(self, x)

    def _update(self, x: np.ndarray, target: float) -> None:
        self.inner.update(x, target)


def clipped_variance_predict(cvr: ClippedVarianceRegressor, x: np.ndarray) -> float:
    return max(min(cvr.inner.predict(x), cvr.ceiling), cvr.floor)
