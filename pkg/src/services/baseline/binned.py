"""
Binned Bonferroni Baseline
Two-sided confidence sequences on the pseudo-outcome mean of each context bin,
with the error budget split evenly across bins
"""

import logging
from dataclasses import dataclass, field
from itertools import islice
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.config.settings import settings
from src.models.observation import Observation, ObservationCate, StreamKind
from src.models.records import Continue, Decision, Rejected
from src.models.test_config import TestConfig, validate_config
from src.services.baseline.binning import Binning
from src.services.inference.boundary import mixture_half_width
from src.services.inference.pseudo import pseudo_outcome
from src.services.regression.base import SequentialRegressor
from src.services.regression.factory import GroundTruth, build_regressor
from src.utils.errors import InvalidInput, StreamKindMismatch
from src.utils.seeding import model_seed_sequence

logger = logging.getLogger(__name__)

BIN_RECORD_FIELDS = ["t", "bin", "n", "mean", "half_width", "rejected"]


def per_bin_level(alpha: float, bins: int) -> float:
    """alpha / b; the per-bin levels sum to alpha"""
    return alpha / bins


def per_bin_burn_in(t0: int, bins: int) -> int:
    return max(2, t0 // bins)


def binning_warmup(t0: int) -> int:
    """Contexts seen before the bin edges freeze; never later than t0"""
    return max(1, min(settings.binned_warmup, t0))


def per_bin_nulls(f_value_per_bin: Union[float, Sequence[float]], bins: int) -> np.ndarray:
    """Null value for each bin; a scalar applies to every bin"""
    values = np.asarray(f_value_per_bin, dtype=float)
    if values.ndim == 0:
        return np.full(bins, float(values))
    if values.shape != (bins,) or not np.all(np.isfinite(values)):
        raise InvalidInput("need one finite null value per bin", {"bins": bins, "null": values.tolist()})
    return values


def interval_excludes(mean: float, half_width: float, null_value: float) -> bool:
    return abs(mean - null_value) > half_width


@dataclass
class BinState:
    """
    Running moments per bin (Welford) and absorbing rejection flags.

    half_width is +inf until a bin has been evaluated at least once.
    """

    bins: int
    alpha: float
    rho: float
    burn_in: int
    n: np.ndarray = field(init=False)
    mean: np.ndarray = field(init=False)
    m2: np.ndarray = field(init=False)
    half_width: np.ndarray = field(init=False)
    rejected: np.ndarray = field(init=False)
    rejected_at: Optional[int] = None

    def __post_init__(self):
        if self.bins < 1:
            raise InvalidInput("bins must be >= 1", {"bins": self.bins})
        self.n = np.zeros(self.bins, dtype=np.int64)
        self.mean = np.zeros(self.bins)
        self.m2 = np.zeros(self.bins)
        self.half_width = np.full(self.bins, np.inf)
        self.rejected = np.zeros(self.bins, dtype=bool)

    @classmethod
    def for_config(cls, cfg: TestConfig, bins: int) -> "BinState":
        return cls(bins=bins, alpha=cfg.alpha, rho=cfg.rho, burn_in=per_bin_burn_in(cfg.t0, bins))

    @property
    def level(self) -> float:
        return per_bin_level(self.alpha, self.bins)

    def sample_variance(self, j: int) -> float:
        """Unbiased sample variance of bin j; 0 with fewer than two points"""
        if self.n[j] < 2:
            return 0.0
        return max(float(self.m2[j]) / float(self.n[j] - 1), 0.0)

    def accumulate(self, j: int, phi: float) -> None:
        self.n[j] += 1
        delta = phi - self.mean[j]
        self.mean[j] += delta / self.n[j]
        self.m2[j] += delta * (phi - self.mean[j])

    def evaluate(self, j: int, null_value: float, t: int) -> bool:
        """Refresh bin j's interval at step t; returns True when it newly rejects"""
        n = int(self.n[j])
        if n == 0:
            return False
        self.half_width[j] = mixture_half_width(n, self.sample_variance(j), self.level / 2.0, self.rho)
        if self.rejected[j] or n < self.burn_in:
            return False
        if not interval_excludes(float(self.mean[j]), float(self.half_width[j]), null_value):
            return False
        self.rejected[j] = True
        if self.rejected_at is None:
            self.rejected_at = t
        return True

    def rows(self, t: int) -> List[Dict[str, Any]]:
        """Diagnostics, one row per bin"""
        return [
            {
                "t": t,
                "bin": j,
                "n": int(self.n[j]),
                "mean": float(self.mean[j]),
                "half_width": float(self.half_width[j]),
                "rejected": bool(self.rejected[j]),
            }
            for j in range(self.bins)
        ]


def binned_step(
    bstate: BinState,
    bin_index: int,
    phi: float,
    f_value_per_bin: Union[float, Sequence[float]],
    t: int,
) -> BinState:
    """Add phi to its bin and re-test that bin against its own null value at step t"""
    if not 0 <= bin_index < bstate.bins:
        raise InvalidInput("bin index out of range", {"bin": bin_index, "bins": bstate.bins})
    null_values = per_bin_nulls(f_value_per_bin, bstate.bins)
    bstate.accumulate(bin_index, phi)
    if bstate.evaluate(bin_index, float(null_values[bin_index]), t):
        logger.info(f"Bin {bin_index} rejected at t={t} (n={int(bstate.n[bin_index])})")
    return bstate


def binned_decision(bstate: BinState) -> Decision:
    if bstate.rejected_at is not None:
        return Rejected(bstate.rejected_at)
    return Continue()


class BinnedTest:
    """
    Stream consumer for the baseline.

    Pseudo-outcomes are computed on arrival with the current outcome
    regressors (CATE streams) and held until the bin edges freeze; the held
    values are then binned and every bin is tested at the freezing step.
    """

    def __init__(
        self,
        binning: Binning,
        cfg: TestConfig,
        null_value: Union[float, Sequence[float]],
        kind: StreamKind,
        g1: Optional[SequentialRegressor] = None,
        g0: Optional[SequentialRegressor] = None,
    ):
        if (kind == StreamKind.CATE) != (g1 is not None and g0 is not None):
            raise ValueError("outcome regressors are required for CATE streams and only for them")
        self.cfg = validate_config(cfg, warn=False)
        self.binning = binning
        self.null_values = per_bin_nulls(null_value, binning.bins)
        self.kind = kind
        self.g1 = g1
        self.g0 = g0
        self.state = BinState.for_config(cfg, binning.bins)
        self.t = 0
        self._held: List[Tuple[np.ndarray, float]] = []

    @classmethod
    def create(
        cls,
        binning: Binning,
        cfg: TestConfig,
        null_value: Union[float, Sequence[float]],
        kind: StreamKind,
        dimension: int,
        truth: Optional[GroundTruth] = None,
    ) -> "BinnedTest":
        g1 = g0 = None
        if kind == StreamKind.CATE:
            truth = truth or GroundTruth()
            lo, hi = cfg.outcome_range
            mid = 0.5 * (lo + hi)
            g1_seed, g0_seed = model_seed_sequence(cfg.seed).spawn(2)
            g1 = build_regressor(cfg.outcome_regressor, dimension, lo, hi, mid, g1_seed, truth.mu1)
            g0 = build_regressor(cfg.outcome_regressor, dimension, lo, hi, mid, g0_seed, truth.mu0)
        return cls(binning, cfg, null_value, kind, g1, g0)

    def _phi(self, obs: Observation, x: np.ndarray) -> float:
        if isinstance(obs, ObservationCate):
            phi = pseudo_outcome(obs, self.g1.predict(x), self.g0.predict(x))
            arm = self.g1 if obs.a == 1 else self.g0
            arm.update(x, obs.y)
            return phi
        return pseudo_outcome(obs)

    def step(self, obs: Observation) -> BinState:
        if obs.kind != self.kind:
            raise StreamKindMismatch(f"test expects {self.kind.value} observations, got {obs.kind.value}")
        x = obs.features()
        self.t += 1
        phi = self._phi(obs, x)

        if not self.binning.frozen:
            self._held.append((x, phi))
            if self.binning.observe(x):
                self._replay_held()
            return self.state

        return binned_step(self.state, self.binning.assign(x), phi, self.null_values, self.t)

    def _replay_held(self) -> None:
        for x, phi in self._held:
            self.state.accumulate(self.binning.assign(x), phi)
        self._held = []
        for j in range(self.state.bins):
            if self.state.evaluate(j, float(self.null_values[j]), self.t):
                logger.info(f"Bin {j} rejected at t={self.t} (n={int(self.state.n[j])})")

    def decision(self) -> Decision:
        return binned_decision(self.state)


def run_binned(
    test: BinnedTest,
    stream: Iterable[Observation],
    horizon: int,
    early_stop: bool = False,
    record_stride: Optional[int] = None,
) -> Tuple[List[Dict[str, Any]], Optional[int]]:
    """
    Consume up to `horizon` observations

    Returns:
        (bin rows every record_stride steps, rejection time or None)
    """
    rows: List[Dict[str, Any]] = []
    for obs in islice(stream, horizon):
        test.step(obs)
        if record_stride is not None and test.t % record_stride == 0:
            rows.extend(test.state.rows(test.t))
        if early_stop and test.state.rejected_at is not None:
            break
    return rows, test.state.rejected_at
