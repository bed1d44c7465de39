"""
k-Nearest-Neighbour Regressor
Inverse-L2-distance weighted neighbours over the full history (naive scan)
"""

import numpy as np

from src.services.regression.base import SequentialRegressor
from src.utils.errors import DimensionMismatch, InvalidInput


def knn_predict(
    history_x: np.ndarray,
    history_y: np.ndarray,
    query: np.ndarray,
    k: int,
    default: float,
) -> float:
    """
    Inverse-distance weighted mean of the min(k, n) nearest targets

    Args:
        history_x: (n, d) stored contexts
        history_y: (n,) stored targets
        query: (d,) context to predict at
        k: Number of neighbours, >= 1
        default: Returned when the history is empty

    Returns:
        Weighted mean; when any neighbour sits at distance 0, the plain mean
        of all zero-distance targets.
    """
    if k < 1:
        raise InvalidInput("k must be >= 1", {"k": k})
    n = len(history_y)
    if n == 0:
        return float(default)
    history_x = np.asarray(history_x, dtype=float)
    query = np.asarray(query, dtype=float)
    if history_x.shape[1] != query.shape[-1]:
        raise DimensionMismatch(history_x.shape[1], query.shape[-1])

    dist = np.sqrt(np.sum((history_x - query) ** 2, axis=1))
    exact = dist == 0.0
    if np.any(exact):
        return float(np.mean(history_y[exact]))

    if n > k:
        nearest = np.argpartition(dist, k - 1)[:k]
    else:
        nearest = np.arange(n)
    inv = 1.0 / dist[nearest]
    return float(np.dot(inv, history_y[nearest]) / np.sum(inv))


class KnnRegressor(SequentialRegressor):
    """k-NN over a growing buffer of past (x, target) pairs"""

    def __init__(self, dimension: int, k: int, lo: float, hi: float, default: float, capacity: int = 1024):
        super().__init__(lo, hi, default)
        if k < 1:
            raise InvalidInput("k must be >= 1", {"k": k})
        self.k = k
        self.dimension = dimension
        self._x = np.empty((capacity, dimension), dtype=float)
        self._y = np.empty(capacity, dtype=float)
        self._n = 0

    def _predict(self, x: np.ndarray) -> float:
        if x.shape[-1] != self.dimension:
            raise DimensionMismatch(self.dimension, x.shape[-1])
        return knn_predict(self._x[: self._n], self._y[: self._n], x, self.k, self.default)

    def _update(self, x: np.ndarray, target: float) -> None:
        if x.shape[-1] != self.dimension:
            raise DimensionMismatch(self.dimension, x.shape[-1])
        if self._n == len(self._y):
            self._x = np.concatenate([self._x, np.empty_like(self._x)])
            self._y = np.concatenate([self._y, np.empty_like(self._y)])
        self._x[self._n] = x
        self._y[self._n] = target
        self._n += 1
