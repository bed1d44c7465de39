"""
Single-Stream Runs
Analyse one stream (file or synthetic), build a grid confidence sequence,
or dump a synthetic stream to CSV
"""

import logging
from itertools import islice
from pathlib import Path
from typing import IO, Any, Dict, List, Optional, Tuple

import numpy as np

from src.config.settings import settings
from src.models.null_spec import NullSpec
from src.models.observation import StreamKind
from src.models.records import STEP_RECORD_FIELDS
from src.models.test_config import TestConfig, validate_config
from src.services.baseline.binned import BIN_RECORD_FIELDS, BinnedTest, binning_warmup, run_binned
from src.services.baseline.binning import Binning, BinningKind
from src.services.harness.exporter import DataExporter
from src.services.harness.montecarlo import Method, default_null_value
from src.services.harness.sources import SourceSpec, StreamSource, synthetic_source
from src.services.harness.stream_io import write_stream
from src.services.inference.confseq import DEFAULT_GRID_POINTS, GridCs, build_grid
from src.services.inference.engine import SequentialTest, run_to_horizon
from src.utils.errors import InvalidInput

logger = logging.getLogger(__name__)

CS_FIELDS = ["t", "hull_lo", "hull_hi", "n_survivors"]


def _config_echo(cfg: TestConfig) -> Dict[str, Any]:
    return cfg.model_dump(mode="json")


def run_stream(
    source: StreamSource,
    cfg: TestConfig,
    out_dir: Path,
    method: Method = Method.GAAVI,
    null_value: Optional[float] = None,
    horizon: Optional[int] = None,
    record_stride: Optional[int] = None,
    bins: Optional[int] = None,
    binning: BinningKind = BinningKind.CENTERED_NORM,
    exporter: Optional[DataExporter] = None,
) -> Dict[str, Any]:
    """
    Run one test over the whole source (or its first `horizon` observations)

    Writes records.csv (or bins.csv for the binned baseline) and summary.json
    under out_dir. Nothing time-dependent goes into either file, so the same
    input, configuration and seed reproduce them byte for byte.

    Returns:
        The summary: n_f, t_consumed, method, stream kind and dimension, and the
        effective configuration
    """
    validate_config(cfg)
    exporter = exporter or DataExporter()
    out_dir = Path(out_dir)
    record_stride = record_stride or settings.checkpoint_stride
    null_value = default_null_value(source.kind) if null_value is None else null_value
    limit = horizon if horizon is not None else np.iinfo(np.int64).max

    if method == Method.BINNED:
        bins = bins or settings.default_bins
        test = BinnedTest.create(
            Binning(bins, binning, warmup=binning_warmup(cfg.t0)),
            cfg,
            null_value,
            source.kind,
            source.dimension,
            source.truth,
        )
        rows, n_f = run_binned(test, source.observations, limit, record_stride=record_stride)
        exporter.write_csv(out_dir / "bins.csv", rows, BIN_RECORD_FIELDS)
        t_consumed = test.t
    else:
        test = SequentialTest.create(cfg, NullSpec.constant(null_value), source.kind, source.dimension, source.truth)
        records, n_f = run_to_horizon(test, source.observations, limit, record_stride=record_stride)
        exporter.write_csv(out_dir / "records.csv", [r.to_row() for r in records], STEP_RECORD_FIELDS)
        t_consumed = test.state.t

    summary = {
        "n_f": n_f,
        "t_consumed": t_consumed,
        "method": method.value,
        "kind": source.kind.value,
        "dimension": source.dimension,
        "null_value": null_value,
        "config": _config_echo(cfg),
    }
    exporter.write_json(out_dir / "summary.json", summary)
    logger.info(f"Consumed {t_consumed} observations; n_f={n_f}")
    return summary


def default_grid_range(cfg: TestConfig, kind: StreamKind) -> Tuple[float, float]:
    """Range of tau: the outcome range for CMF streams, its difference range for CATE"""
    lo, hi = cfg.outcome_range
    if kind == StreamKind.CATE:
        return lo - hi, hi - lo
    return lo, hi


def run_cs(
    source: StreamSource,
    cfg: TestConfig,
    out_dir: Path,
    grid_lo: Optional[float] = None,
    grid_hi: Optional[float] = None,
    grid_points: int = DEFAULT_GRID_POINTS,
    horizon: Optional[int] = None,
    record_stride: Optional[int] = None,
    exporter: Optional[DataExporter] = None,
) -> Dict[str, Any]:
    """
    Grid confidence sequence over constant nulls

    The default grid spans the range of tau: the outcome range for CMF
    streams and its symmetric difference range for CATE streams. Writes
    cs.csv (survivor count and hull every record_stride steps) and
    summary.json with the final survivors.
    """
    validate_config(cfg)
    exporter = exporter or DataExporter()
    out_dir = Path(out_dir)
    record_stride = record_stride or settings.grid_stride
    lo, hi = default_grid_range(cfg, source.kind)
    grid = build_grid(lo if grid_lo is None else grid_lo, hi if grid_hi is None else grid_hi, grid_points)

    cs = GridCs.create(grid, cfg, source.kind, source.dimension, source.truth)
    observations = source.observations if horizon is None else islice(source.observations, horizon)
    rows: List[Dict[str, Any]] = []
    for obs in observations:
        cs.cs_step(obs)
        if cs.t % record_stride == 0:
            rows.append(_cs_row(cs))
    if cs.t == 0:
        raise InvalidInput("stream contained no observations")
    if cs.t % record_stride != 0:
        rows.append(_cs_row(cs))
    exporter.write_csv(out_dir / "cs.csv", rows, CS_FIELDS)

    mask, hull = cs.cs_survivors()
    summary = {
        "t_consumed": cs.t,
        "kind": source.kind.value,
        "grid": {"lo": float(grid[0]), "hi": float(grid[-1]), "points": int(grid.size)},
        "survivors": grid[mask].tolist(),
        "hull": list(hull) if hull is not None else None,
        "config": _config_echo(cfg),
    }
    exporter.write_json(out_dir / "summary.json", summary)
    logger.info(f"Confidence sequence after t={cs.t}: {int(mask.sum())} of {grid.size} candidates survive")
    return summary


def _cs_row(cs: GridCs) -> Dict[str, Any]:
    mask, hull = cs.cs_survivors()
    return {
        "t": cs.t,
        "hull_lo": hull[0] if hull else None,
        "hull_hi": hull[1] if hull else None,
        "n_survivors": int(mask.sum()),
    }


def generate(spec: SourceSpec, n: int, seed: int, handle: IO[str]) -> int:
    """Write the first n observations of the synthetic stream for `seed`"""
    if n < 0:
        raise InvalidInput("n must be >= 0", {"n": n})
    source = synthetic_source(spec, seed)
    return write_stream(handle, islice(source.observations, n), kind=source.kind, dimension=source.dimension)
