"""
Pytest Configuration
Shared fixtures for testing
"""

from typing import List, Tuple

import numpy as np
import pytest

from src.models.test_config import RegressorConfig, RegressorKind, TestConfig
from src.services.regression.base import SequentialRegressor


class SpyRegressor(SequentialRegressor):
    """
    Fixed-value regressor that appends ("predict" | "update", name, step)
    to a shared call log. `step` is the number of updates seen so far.
    """

    def __init__(self, name: str, log: List[Tuple[str, str, int]], value: float = 0.5, lo: float = -10.0, hi: float = 10.0):
        super().__init__(lo, hi, default=value)
        self.name = name
        self.log = log
        self.value = value

    def _predict(self, x: np.ndarray) -> float:
        self.log.append(("predict", self.name, self.n_updates))
        return self.value

    def _update(self, x: np.ndarray, target: float) -> None:
        self.log.append(("update", self.name, self.n_updates))


def oracle_config(**overrides) -> TestConfig:
    """TestConfig whose every regressor role uses the stream's true functions"""
    oracle = RegressorConfig(kind=RegressorKind.ORACLE)
    fields = dict(tau_regressor=oracle, variance_regressor=oracle, outcome_regressor=oracle)
    fields.update(overrides)
    return TestConfig(**fields)


def knn_config(**overrides) -> TestConfig:
    knn = RegressorConfig(kind=RegressorKind.KNN, knn_k=50)
    fields = dict(tau_regressor=knn, variance_regressor=knn, outcome_regressor=knn)
    fields.update(overrides)
    return TestConfig(**fields)


@pytest.fixture
def default_config():
    """Defaults with a fixed seed"""
    return TestConfig(seed=7)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def call_log():
    return []


@pytest.fixture
def out_dir(tmp_path):
    return tmp_path / "out"
