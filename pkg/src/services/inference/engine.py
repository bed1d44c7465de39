"""
Sequential Test Engine
Per-observation pipeline: pseudo-outcome, predictable weight, weighted sum,
variance estimate, lower bound and the absorbing rejection decision
"""

import logging
from dataclasses import dataclass
from itertools import islice
from typing import Iterable, List, Optional, Tuple

from src.models.null_spec import NullSpec, eval_null
from src.models.observation import Observation, StreamKind
from src.models.records import Continue, Decision, Rejected, StepRecord
from src.models.test_config import TestConfig, validate_config
from src.services.inference.boundary import lower_bound
from src.services.inference.nuisance import NuisanceSet
from src.services.inference.pseudo import pseudo_outcome
from src.services.inference.weights import EpsilonSchedule, epsilon_at, raw_weight, threshold_weight
from src.services.regression.factory import GroundTruth
from src.utils.errors import StreamKindMismatch
from src.utils.seeding import model_seed_sequence

logger = logging.getLogger(__name__)


@dataclass
class TestState:
    """
    Running statistics of one test

    t: observations consumed
    psi_sum: sum of w_i (phi_i - f(X_i))
    wsq_rsq_sum: sum of w_i^2 r_i^2 (= t * V_hat_t)
    rejected_at: first index i >= t0 with L_i > 0; never changes once set
    """
    __test__ = False

    t: int = 0
    psi_sum: float = 0.0
    wsq_rsq_sum: float = 0.0
    rejected_at: Optional[int] = None

    @property
    def psi_bar(self) -> float:
        return self.psi_sum / self.t if self.t else 0.0

    @property
    def v_hat(self) -> float:
        return self.wsq_rsq_sum / self.t if self.t else 0.0


def decision(state: TestState, cfg: TestConfig) -> Decision:
    """Rejected(at) once the lower bound has crossed zero at some t >= cfg.t0"""
    if state.rejected_at is not None and state.rejected_at >= cfg.t0:
        return Rejected(state.rejected_at)
    return Continue()


class SequentialTest:
    """
    One test of H(f) on one stream: nuisance regressors, null, configuration
    and running state. Single-owner; not safe for concurrent steps.
    """

    def __init__(
        self,
        nuisances: NuisanceSet,
        null: NullSpec,
        cfg: TestConfig,
        state: Optional[TestState] = None,
    ):
        self.cfg = validate_config(cfg, warn=False)
        self.nuisances = nuisances
        self.null = null
        self.state = state or TestState()
        self.schedule = EpsilonSchedule(c0=cfg.eps_scale, gamma=cfg.gamma)

    @classmethod
    def create(
        cls,
        cfg: TestConfig,
        null: NullSpec,
        kind: StreamKind,
        dimension: int,
        truth: Optional[GroundTruth] = None,
    ) -> "SequentialTest":
        """Build regressors from cfg (seeded from cfg.seed) and wrap them in a fresh test"""
        nuisances = NuisanceSet.build(cfg, kind, dimension, model_seed_sequence(cfg.seed), truth)
        return cls(nuisances, null, cfg)

    @property
    def kind(self) -> StreamKind:
        return self.nuisances.kind

    def step(self, obs: Observation) -> StepRecord:
        """
        Consume one observation.

        Predictions are read before the statistics are accumulated and the
        regressors are trained only afterwards, so every quantity used for
        observation t depends on observations 1..t-1 alone.
        """
        if obs.kind != self.kind:
            raise StreamKindMismatch(f"test expects {self.kind.value} observations, got {obs.kind.value}")
        state = self.state
        cfg = self.cfg
        x = obs.features()
        t = state.t + 1

        prediction = self.nuisances.predict(x)
        phi = pseudo_outcome(obs, prediction.g1, prediction.g0)
        f_x = eval_null(self.null, x)

        eps = epsilon_at(self.schedule, t)
        weight = threshold_weight(raw_weight(prediction.tau, f_x, prediction.v), eps)

        state.psi_sum += weight * (phi - f_x)
        residual = phi - prediction.tau
        state.wsq_rsq_sum += (weight * weight) * (residual * residual)

        self.nuisances.update(obs, x, phi, residual)
        state.t = t

        psi_bar = state.psi_sum / t
        v_hat = state.wsq_rsq_sum / t
        bound = lower_bound(psi_bar, t, v_hat, cfg.alpha, cfg.rho)
        if state.rejected_at is None and t >= cfg.t0 and bound > 0:
            state.rejected_at = t
            logger.info(f"Rejected H(f) at t={t} (L_t={bound:.6g}, psi_bar={psi_bar:.6g})")

        return StepRecord(
            t=t,
            phi=float(phi),
            weight=float(weight),
            psi_bar=float(psi_bar),
            v_hat=float(v_hat),
            lower_bound=float(bound),
            rejected=state.rejected_at is not None,
        )

    def decision(self) -> Decision:
        return decision(self.state, self.cfg)


def run_to_horizon(
    test: SequentialTest,
    stream: Iterable[Observation],
    horizon: int,
    early_stop: bool = False,
    record_stride: Optional[int] = 1,
) -> Tuple[List[StepRecord], Optional[int]]:
    """
    Consume up to `horizon` observations

    Args:
        test: The test to advance
        stream: Observations (may end early)
        horizon: Maximum observations to consume
        early_stop: Stop right after the rejecting observation
        record_stride: Keep every k-th record (plus the rejection record);
                       None keeps no records

    Returns:
        (records, n_f) with n_f the rejection time or None
    """
    records: List[StepRecord] = []
    for obs in islice(stream, horizon):
        before = test.state.rejected_at
        record = test.step(obs)
        newly_rejected = before is None and test.state.rejected_at is not None
        if record_stride is not None and (record.t % record_stride == 0 or newly_rejected):
            records.append(record)
        if early_stop and test.state.rejected_at is not None:
            break
    return records, test.state.rejected_at
