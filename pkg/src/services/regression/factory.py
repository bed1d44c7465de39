"""
Regressor Factory
Builds sequential regressors from configuration for each nuisance role
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from src.models.test_config import RegressorConfig, RegressorKind
from src.services.regression.base import SequentialRegressor
from src.services.regression.knn import KnnRegressor
from src.services.regression.mlp import MlpRegressor
from src.services.regression.oracle import ConstantRegressor, OracleRegressor
from src.services.regression.ridge import RidgeSgdRegressor
from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroundTruth:
    """
    Known nuisance functions of a synthetic stream, used by oracle regressors

    tau: conditional mean (CMF) or treatment effect (CATE)
    variance: conditional variance of the pseudo-outcome given x
    mu1, mu0: arm-wise outcome means (CATE only)
    """
    tau: Optional[Callable[[np.ndarray], float]] = None
    variance: Optional[Callable[[np.ndarray], float]] = None
    mu1: Optional[Callable[[np.ndarray], float]] = None
    mu0: Optional[Callable[[np.ndarray], float]] = None


def build_regressor(
    rcfg: RegressorConfig,
    dimension: int,
    lo: float,
    hi: float,
    default: float,
    seed_seq: np.random.SeedSequence,
    oracle: Optional[Callable[[np.ndarray], float]] = None,
) -> SequentialRegressor:
    """
    Instantiate one regressor

    Args:
        rcfg: Regressor kind and hyperparameters
        dimension: Context dimension d
        lo, hi: Declared output clamp range
        default: Cold-start prediction
        seed_seq: Seed material for randomly initialised models
        oracle: Known function, required for kind=oracle
    """
    if rcfg.kind == RegressorKind.KNN:
        return KnnRegressor(dimension, rcfg.knn_k, lo, hi, default)
    if rcfg.kind == RegressorKind.RIDGE:
        return RidgeSgdRegressor(dimension, rcfg.ridge_lr, rcfg.ridge_l2, lo, hi, default)
    if rcfg.kind == RegressorKind.MLP:
        rng = np.random.default_rng(seed_seq)
        return MlpRegressor(dimension, rcfg.mlp_hidden, rcfg.mlp_adam_lr, lo, hi, default, rng)
    if rcfg.kind == RegressorKind.CONSTANT:
        return ConstantRegressor(lo, hi, default, rcfg.constant_value)
    if rcfg.kind == RegressorKind.ORACLE:
        if oracle is None:
            raise ConfigError("oracle regressor requested but the stream has no known nuisance function")
        return OracleRegressor(oracle, lo, hi)
    raise ConfigError(f"unknown regressor kind {rcfg.kind}")
