"""
Nuisance Set
The regressors a test reads before, and trains after, each observation
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.models.observation import Observation, ObservationCate, StreamKind
from src.models.test_config import TestConfig
from src.services.regression.base import SequentialRegressor
from src.services.regression.factory import GroundTruth, build_regressor
from src.services.regression.variance import ClippedVarianceRegressor


@dataclass(frozen=True, slots=True)
class NuisancePrediction:
    """Predictions read for one observation before any update with it"""
    tau: float
    v: float
    g1: float = 0.0
    g0: float = 0.0


class NuisanceSet:
    """
    tau_hat (trained on pseudo-outcomes), v_hat (clipped, trained on squared
    residuals) and, for CATE streams, the arm-wise outcome regressors g1, g0.
    """

    def __init__(
        self,
        kind: StreamKind,
        tau_hat: SequentialRegressor,
        v_hat: ClippedVarianceRegressor,
        g1: Optional[SequentialRegressor] = None,
        g0: Optional[SequentialRegressor] = None,
    ):
        if (kind == StreamKind.CATE) != (g1 is not None and g0 is not None):
            raise ValueError("outcome regressors are required for CATE streams and only for them")
        self.kind = kind
        self.tau_hat = tau_hat
        self.v_hat = v_hat
        self.g1 = g1
        self.g0 = g0

    @classmethod
    def build(
        cls,
        cfg: TestConfig,
        kind: StreamKind,
        dimension: int,
        seed_seq: np.random.SeedSequence,
        truth: Optional[GroundTruth] = None,
    ) -> "NuisanceSet":
        """
        Construct the regressors from cfg.

        Clamp ranges follow the outcome range (lo, hi): tau_hat in [lo, hi] for
        CMF and [lo - hi, hi - lo] for CATE; g in [lo, hi]; the variance
        regressor's inner model in [0, var_ceiling].
        """
        truth = truth or GroundTruth()
        lo, hi = cfg.outcome_range
        tau_seed, var_seed, g1_seed, g0_seed = seed_seq.spawn(4)

        if kind == StreamKind.CMF:
            tau_lo, tau_hi, tau_default = lo, hi, 0.5 * (lo + hi)
        else:
            tau_lo, tau_hi, tau_default = lo - hi, hi - lo, 0.0

        tau_hat = build_regressor(
            cfg.tau_regressor, dimension, tau_lo, tau_hi, tau_default, tau_seed, truth.tau
        )
        inner = build_regressor(
            cfg.variance_regressor, dimension, 0.0, cfg.var_ceiling, cfg.var_ceiling, var_seed, truth.variance
        )
        v_hat = ClippedVarianceRegressor(inner, cfg.var_floor, cfg.var_ceiling)

        g1 = g0 = None
        if kind == StreamKind.CATE:
            mid = 0.5 * (lo + hi)
            g1 = build_regressor(cfg.outcome_regressor, dimension, lo, hi, mid, g1_seed, truth.mu1)
            g0 = build_regressor(cfg.outcome_regressor, dimension, lo, hi, mid, g0_seed, truth.mu0)
        return cls(kind, tau_hat, v_hat, g1, g0)

    def predict(self, x: np.ndarray) -> NuisancePrediction:
        if self.kind == StreamKind.CATE:
            return NuisancePrediction(
                tau=self.tau_hat.predict(x),
                v=self.v_hat.predict(x),
                g1=self.g1.predict(x),
                g0=self.g0.predict(x),
            )
        return NuisancePrediction(tau=self.tau_hat.predict(x), v=self.v_hat.predict(x))

    def update(self, obs: Observation, x: np.ndarray, phi: float, residual: float) -> None:
        """Train on the observation just consumed; call only after all reads for it"""
        self.tau_hat.update(x, phi)
        self.v_hat.update(x, residual * residual)
        if isinstance(obs, ObservationCate):
            arm = self.g1 if obs.a == 1 else self.g0
            arm.update(x, obs.y)
