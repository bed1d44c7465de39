"""
Ridge Regression with SGD
Linear model with intercept, one penalised gradient step per observation
"""

import numpy as np

from src.services.regression.base import SequentialRegressor

# Gradient components are clipped to this magnitude to keep updates finite
GRADIENT_CLIP = 1e6


def with_intercept(x: np.ndarray) -> np.ndarray:
    return np.append(np.asarray(x, dtype=float), 1.0)


def ridge_sgd_update(coef: np.ndarray, x: np.ndarray, target: float, lr: float, l2: float) -> np.ndarray:
    """
    One SGD step on 0.5 * (coef . x~ - target)^2 + 0.5 * l2 * |coef|^2

    Args:
        coef: Coefficients over x~ = (x, 1)
        x: Context (intercept appended here)
        target: Regression target
        lr: Step size > 0
        l2: Penalty >= 0

    Returns:
        New coefficient vector (input is not modified)
    """
    x_aug = with_intercept(x)
    residual = float(np.dot(coef, x_aug)) - target
    grad = residual * x_aug + l2 * coef
    grad = np.clip(grad, -GRADIENT_CLIP, GRADIENT_CLIP)
    return coef - lr * grad


class RidgeSgdRegressor(SequentialRegressor):
    def __init__(self, dimension: int, lr: float, l2: float, lo: float, hi: float, default: float):
        super().__init__(lo, hi, default)
        self.lr = lr
        self.l2 = l2
        self.coef = np.zeros(dimension + 1, dtype=float)

    def _predict(self, x: np.ndarray) -> float:
        if self.n_updates == 0:
            return self.default
        return float(np.dot(self.coef, with_intercept(x)))

    def _update(self, x: np.ndarray, target: float) -> None:
        self.coef = ridge_sgd_update(self.coef, x, target, self.lr, self.l2)
