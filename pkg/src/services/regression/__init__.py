"""
Regression Services
Predictable online regressors for tau_hat, v_hat and g
"""

from src.services.regression.base import SequentialRegressor
from src.services.regression.factory import GroundTruth, build_regressor
from src.services.regression.knn import KnnRegressor, knn_predict
from src.services.regression.mlp import MlpRegressor, mlp_forward, mlp_update
from src.services.regression.oracle import ConstantRegressor, OracleRegressor, oracle_regressor
from src.services.regression.ridge import RidgeSgdRegressor, ridge_sgd_update
from src.services.regression.variance import ClippedVarianceRegressor, clipped_variance_predict

__all__ = [
    "SequentialRegressor",
    "GroundTruth",
    "build_regressor",
    "KnnRegressor",
    "knn_predict",
    "MlpRegressor",
    "mlp_forward",
    "mlp_update",
    "ConstantRegressor",
    "OracleRegressor",
    "oracle_regressor",
    "RidgeSgdRegressor",
    "ridge_sgd_update",
    "ClippedVarianceRegressor",
    "clipped_variance_predict",
]
