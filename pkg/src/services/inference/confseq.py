"""
Grid Confidence Sequences
Inverts the test over a grid of constant nulls that share one set of regressors
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from src.models.observation import Observation, StreamKind
from src.models.test_config import TestConfig, validate_config
from src.services.inference.boundary import lower_bound
from src.services.inference.engine import TestState
from src.services.inference.nuisance import NuisanceSet
from src.services.inference.pseudo import pseudo_outcome
from src.services.inference.weights import EpsilonSchedule, epsilon_at, raw_weight, threshold_weight
from src.services.regression.factory import GroundTruth
from src.utils.errors import InvalidInput, StreamKindMismatch
from src.utils.seeding import model_seed_sequence

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 101
_UNSET = -1


def build_grid(lo: float, hi: float, points: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    """Evenly spaced candidate constants over [lo, hi]"""
    if points < 1 or not lo <= hi:
        raise InvalidInput("grid needs points >= 1 and lo <= hi", {"lo": lo, "hi": hi, "points": points})
    return np.linspace(lo, hi, points)


class GridCs:
    """
    Per-candidate weighted sums over a sorted grid of constants c_1 < ... < c_m.

    Predictions are read once per observation and reused for every
    candidate; only psi and the variance sum are kept per candidate.
    """

    def __init__(self, grid: Sequence[float], nuisances: NuisanceSet, cfg: TestConfig):
        grid = np.asarray(grid, dtype=float).ravel()
        if grid.size == 0:
            raise InvalidInput("grid must contain at least one candidate")
        if np.any(np.diff(grid) < 0):
            raise InvalidInput("grid must be sorted ascending")
        self.cfg = validate_config(cfg, warn=False)
        self.grid = grid
        self.nuisances = nuisances
        self.schedule = EpsilonSchedule(c0=cfg.eps_scale, gamma=cfg.gamma)
        self.t = 0
        self.psi_sum = np.zeros(grid.size)
        self.wsq_rsq_sum = np.zeros(grid.size)
        self.rejected_at = np.full(grid.size, _UNSET, dtype=np.int64)
        self.lower_bounds = np.full(grid.size, -np.inf)
        self._empty_reported = False

    @classmethod
    def create(
        cls,
        grid: Sequence[float],
        cfg: TestConfig,
        kind: StreamKind,
        dimension: int,
        truth: Optional[GroundTruth] = None,
    ) -> "GridCs":
        nuisances = NuisanceSet.build(cfg, kind, dimension, model_seed_sequence(cfg.seed), truth)
        return cls(grid, nuisances, cfg)

    def cs_step(self, obs: Observation) -> "GridCs":
        """Advance every candidate by one observation, sharing one prediction read"""
        if obs.kind != self.nuisances.kind:
            raise StreamKindMismatch(
                f"sequence expects {self.nuisances.kind.value} observations, got {obs.kind.value}"
            )
        cfg = self.cfg
        x = obs.features()
        t = self.t + 1

        prediction = self.nuisances.predict(x)
        phi = pseudo_outcome(obs, prediction.g1, prediction.g0)

        eps = epsilon_at(self.schedule, t)
        weights = threshold_weight(raw_weight(prediction.tau, self.grid, prediction.v), eps)
        self.psi_sum += weights * (phi - self.grid)
        residual = phi - prediction.tau
        self.wsq_rsq_sum += (weights * weights) * (residual * residual)

        self.nuisances.update(obs, x, phi, residual)
        self.t = t

        self.lower_bounds = lower_bound(self.psi_sum / t, t, self.wsq_rsq_sum / t, cfg.alpha, cfg.rho)
        if t >= cfg.t0:
            newly = (self.rejected_at == _UNSET) & (self.lower_bounds > 0)
            self.rejected_at[newly] = t
            if not self._empty_reported and not np.any(self.rejected_at == _UNSET):
                self._empty_reported = True
                logger.warning(f"Every grid candidate rejected by t={t}; the confidence set is empty")
        return self

    def cs_survivors(self) -> Tuple[np.ndarray, Optional[Tuple[float, float]]]:
        """
        Returns:
            (mask, hull): mask[i] is True iff candidate i is unrejected; hull is
            (min, max) of the survivors or None when all are rejected. The mask
            is the primary report since survivors need not be contiguous.
        """
        mask = self.rejected_at == _UNSET
        if not np.any(mask):
            return mask, None
        survivors = self.grid[mask]
        return mask, (float(survivors.min()), float(survivors.max()))

    def candidate_state(self, index: int) -> TestState:
        """Snapshot of candidate `index` in the engine's state shape"""
        rejected = int(self.rejected_at[index])
        return TestState(
            t=self.t,
            psi_sum=float(self.psi_sum[index]),
            wsq_rsq_sum=float(self.wsq_rsq_sum[index]),
            rejected_at=None if rejected == _UNSET else rejected,
        )
