"""
Monte Carlo Harness
Independent replicates of a test on synthetic streams or bootstrap resamples
of a logged stream, rejection-time CDFs and one-parameter sweeps
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.config.settings import settings
from src.models.null_spec import NullSpec
from src.models.observation import StreamKind
from src.models.test_config import TestConfig, validate_config
from src.services.baseline.binned import BinnedTest, binning_warmup, run_binned
from src.services.baseline.binning import Binning, BinningKind
from src.services.harness.ecdf import CDF_FIELDS, CdfTable, cdf_grid, ecdf
from src.services.harness.sources import LoggedStream, SourceSpec, StreamSource, bootstrap_source, synthetic_source
from src.services.inference.engine import SequentialTest, run_to_horizon
from src.utils.errors import InvalidInput, OutOfRange
from src.utils.metrics import TimingContext, get_metrics
from src.utils.seeding import mix_seed

logger = logging.getLogger(__name__)

SWEEP_PARAMS = ("rho", "t0", "gamma", "var_floor")
SWEEP_FIELDS = ["param", "value"] + CDF_FIELDS
REJECTION_TIME_FIELDS = ["replicate", "n_f"]


class Method(str, Enum):
    GAAVI = "gaavi"
    BINNED = "binned"


def default_null_value(kind: StreamKind) -> float:
    """0.5 for outcome means on (0, 1), 0 for treatment effects"""
    return 0.0 if kind == StreamKind.CATE else 0.5


class RunSpec(BaseModel):
    """
    One Monte Carlo experiment: method, stream source, horizon T and
    replicates R. When `logged` is set every replicate streams a bootstrap
    resample of it and `source` is ignored.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    method: Method = Method.GAAVI
    source: SourceSpec = Field(default_factory=SourceSpec)
    horizon: int = 5000
    replicates: int = 1
    cfg: TestConfig = Field(default_factory=TestConfig)
    checkpoint_stride: int = Field(default_factory=lambda: settings.grid_stride)
    null_value: Optional[float] = None
    bins: int = Field(default_factory=lambda: settings.default_bins)
    binning: BinningKind = BinningKind.CENTERED_NORM
    logged: Optional[LoggedStream] = None

    @model_validator(mode="after")
    def _check_ranges(self):
        bad = []
        if self.horizon < self.cfg.t0:
            bad.append("horizon")
        if self.replicates < 1:
            bad.append("replicates")
        if self.checkpoint_stride < 1:
            bad.append("checkpoint_stride")
        if self.bins < 1:
            bad.append("bins")
        if bad:
            raise OutOfRange(bad)
        validate_config(self.cfg)
        return self

    @property
    def kind(self) -> StreamKind:
        return self.logged.kind if self.logged is not None else self.source.kind

    @property
    def source_name(self) -> str:
        return "bootstrap" if self.logged is not None else self.source.dgp.value

    def describe_source(self) -> Dict[str, Any]:
        if self.logged is not None:
            logged = self.logged
            return {"bootstrap": {"rows": len(logged), "kind": logged.kind.value, "dimension": logged.dimension}}
        return self.source.model_dump(mode="json")

    def replicate_source(self, seed: int) -> StreamSource:
        if self.logged is not None:
            return bootstrap_source(self.logged, seed)
        return synthetic_source(self.source, seed)

    @property
    def resolved_null(self) -> float:
        if self.null_value is not None:
            return self.null_value
        return default_null_value(self.kind)


@dataclass(frozen=True)
class SimulationResult:
    times: List[Optional[int]]
    cdf: CdfTable

    @property
    def rejection_rows(self) -> List[Dict[str, Any]]:
        return [{"replicate": r, "n_f": n_f} for r, n_f in enumerate(self.times)]


def run_replicate(spec: RunSpec, index: int) -> Optional[int]:
    """
    Rejection time of replicate `index`, or None within the horizon.

    The replicate's seed depends only on (cfg.seed, index), so the result
    does not depend on which worker runs it or when.
    """
    seed = mix_seed(spec.cfg.seed, index)
    cfg = spec.cfg.model_copy(update={"seed": seed})
    source = spec.replicate_source(seed)

    if spec.method == Method.BINNED:
        binning = Binning(spec.bins, spec.binning, warmup=binning_warmup(cfg.t0))
        test = BinnedTest.create(binning, cfg, spec.resolved_null, source.kind, source.dimension, source.truth)
        _, n_f = run_binned(test, source.observations, spec.horizon, early_stop=True)
    else:
        null = NullSpec.constant(spec.resolved_null)
        test = SequentialTest.create(cfg, null, source.kind, source.dimension, source.truth)
        _, n_f = run_to_horizon(test, source.observations, spec.horizon, early_stop=True, record_stride=None)

    logger.debug(f"Replicate {index}: n_f={n_f}")
    return n_f


def _run_indexed(args) -> Optional[int]:
    spec, index = args
    return run_replicate(spec, index)


def simulate(spec: RunSpec, workers: Optional[int] = None) -> SimulationResult:
    """
    Run all replicates and tabulate the rejection-time CDF

    Args:
        spec: Experiment description
        workers: Worker processes (1 runs serially; default settings.max_workers)
    """
    workers = settings.max_workers if workers is None else workers
    if workers < 1:
        raise InvalidInput("workers must be >= 1", {"workers": workers})
    tags = {"method": spec.method.value, "dgp": spec.source_name}
    logger.info(
        f"Simulating {spec.replicates} replicates of {spec.method.value} on {spec.source_name} "
        f"(T={spec.horizon}, workers={workers})"
    )

    jobs = [(spec, r) for r in range(spec.replicates)]
    with TimingContext("simulation", tags) as timer:
        if workers == 1:
            times = [_run_indexed(job) for job in jobs]
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                # map yields in submission order, i.e. by replicate index
                times = list(executor.map(_run_indexed, jobs))

    metrics = get_metrics()
    rejections = sum(t is not None for t in times)
    metrics.increment("replicates", spec.replicates, tags)
    metrics.increment("rejections", rejections, tags)
    rate = spec.replicates / timer.duration if timer.duration else float("inf")
    logger.info(
        f"Finished {spec.replicates} replicates in {timer.duration:.2f}s ({rate:.2f}/s); "
        f"{rejections} rejected ({metrics.get_counter('rejections', tags)} so far under these tags)"
    )
    logger.debug(f"Run metrics: {metrics.summary()}")

    cdf = ecdf(times, cdf_grid(spec.horizon, spec.checkpoint_stride))
    return SimulationResult(times=times, cdf=cdf)


def with_param(spec: RunSpec, param: str, value: float) -> RunSpec:
    """spec with one TestConfig field replaced, re-validated"""
    if param not in SWEEP_PARAMS:
        raise InvalidInput(f"cannot sweep {param!r}; choose one of {', '.join(SWEEP_PARAMS)}")
    if param == "t0":
        value = int(value)
    cfg = TestConfig(**{**dict(spec.cfg), param: value})
    return RunSpec(**{**dict(spec), "cfg": cfg})


def sweep(
    spec: RunSpec,
    param: str,
    values: Sequence[float],
    workers: Optional[int] = None,
) -> List[Dict[str, Any]]:
    """One simulation per value; CDF rows tagged with (param, value)"""
    rows: List[Dict[str, Any]] = []
    for value in values:
        result = simulate(with_param(spec, param, value), workers)
        for cdf_row in result.cdf.to_rows():
            rows.append({"param": param, "value": value, **cdf_row})
    return rows
