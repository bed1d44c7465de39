"""
Test Configuration
All tunables of the sequential test, validated at construction
"""

import logging
import math
from enum import Enum
from typing import ClassVar, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.config.settings import settings
from src.utils.errors import OutOfRange

logger = logging.getLogger(__name__)

# Largest gamma covered by the error-control guarantee (exclusive)
GAMMA_GUARANTEE_LIMIT = 0.25


class RegressorKind(str, Enum):
    KNN = "knn"
    RIDGE = "ridge"
    MLP = "mlp"
    ORACLE = "oracle"
    CONSTANT = "constant"


class RegressorConfig(BaseModel):
    """Choice and hyperparameters of one sequential regressor"""

    model_config = ConfigDict(frozen=True)

    kind: RegressorKind = Field(default_factory=lambda: RegressorKind(settings.default_regressor))
    knn_k: int = Field(default_factory=lambda: settings.default_knn_k)
    ridge_lr: float = Field(default_factory=lambda: settings.default_ridge_lr)
    ridge_l2: float = Field(default_factory=lambda: settings.default_ridge_l2)
    mlp_hidden: Tuple[int, ...] = Field(default_factory=lambda: tuple(settings.default_mlp_hidden))
    mlp_adam_lr: float = Field(default_factory=lambda: settings.default_mlp_adam_lr)
    constant_value: Optional[float] = None

    @model_validator(mode="after")
    def _check_ranges(self):
        bad = []
        if self.knn_k < 1:
            bad.append("knn.k")
        if not self.ridge_lr > 0:
            bad.append("ridge.lr")
        if not self.ridge_l2 >= 0:
            bad.append("ridge.l2")
        if len(self.mlp_hidden) == 0 or any(w < 1 for w in self.mlp_hidden):
            bad.append("mlp.hidden")
        if not self.mlp_adam_lr > 0:
            bad.append("mlp.adam_lr")
        if bad:
            raise OutOfRange(bad)
        return self


class TestConfig(BaseModel):
    """
    Parameters of the test: error tolerance, boundary tightening, burn-in,
    weight-floor schedule, variance clipping, regressor choices and seed.
    """

    __test__: ClassVar[bool] = False
    model_config = ConfigDict(frozen=True)

    alpha: float = Field(default_factory=lambda: settings.default_alpha)
    rho: float = Field(default_factory=lambda: settings.default_rho)
    t0: int = Field(default_factory=lambda: settings.default_t0)
    eps_scale: float = Field(default_factory=lambda: settings.default_eps_scale)
    gamma: float = Field(default_factory=lambda: settings.default_gamma)
    var_floor: float = Field(default_factory=lambda: settings.default_var_floor)
    var_ceiling: float = Field(default_factory=lambda: settings.default_var_ceiling)
    seed: int = 0
    outcome_range: Tuple[float, float] = (0.0, 1.0)
    tau_regressor: RegressorConfig = Field(default_factory=RegressorConfig)
    variance_regressor: RegressorConfig = Field(default_factory=RegressorConfig)
    outcome_regressor: RegressorConfig = Field(default_factory=RegressorConfig)

    @model_validator(mode="after")
    def _check_ranges(self):
        bad = _violations(self)
        if bad:
            raise OutOfRange(bad)
        return self


def _violations(cfg: TestConfig) -> List[str]:
    bad = []
    if not (0.0 < cfg.alpha < 1.0):
        bad.append("alpha")
    if not (cfg.rho > 0 and math.isfinite(cfg.rho)):
        bad.append("rho")
    if cfg.t0 < 1:
        bad.append("t0")
    if not (cfg.eps_scale > 0 and math.isfinite(cfg.eps_scale)):
        bad.append("eps_scale")
    if not (cfg.gamma >= 0 and math.isfinite(cfg.gamma)):
        bad.append("gamma")
    if not (cfg.var_floor > 0 and math.isfinite(cfg.var_floor)):
        bad.append("var_floor")
    if not (cfg.var_ceiling > cfg.var_floor and math.isfinite(cfg.var_ceiling)):
        bad.append("var_ceiling")
    if not (0 <= cfg.seed < 2 ** 64):
        bad.append("seed")
    lo, hi = cfg.outcome_range
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        bad.append("outcome_range")
    return bad


def validate_config(cfg: TestConfig, warn: bool = True) -> TestConfig:
    """
    Check every range constraint and warn when gamma leaves the guaranteed range

    Args:
        cfg: Configuration to check (instances built with model_construct skip
             construction-time validation, so the checks run again here)
        warn: Log the gamma warning; run entry points pass True once per run
              and the per-replicate constructors pass False

    Returns:
        cfg unchanged

    Raises:
        OutOfRange: listing every violated field
    """
    bad = _violations(cfg)
    if bad:
        raise OutOfRange(bad)
    if warn and cfg.gamma >= GAMMA_GUARANTEE_LIMIT:
        logger.warning(
            f"gamma={cfg.gamma} is outside [0, {GAMMA_GUARANTEE_LIMIT}); "
            "error control is not guaranteed for this decay rate"
        )
    return cfg


def default_burn_in(dimension: int) -> int:
    """Burn-in heuristic t0 = 25 * d (d=10 gives the synthetic default 250)"""
    return 25 * max(1, dimension)
