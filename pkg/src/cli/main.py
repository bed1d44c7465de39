"""
Command-Line Interface
Subcommands: run, simulate, cs, calibrate-rho, sweep, generate
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from src.cli.error_handlers import EXIT_OK, handle_exception
from src.config.loader import build_test_config, load_config_file, merge_overrides
from src.config.settings import settings
from src.models.test_config import RegressorKind, TestConfig, default_burn_in
from src.services.baseline.binning import BinningKind
from src.services.harness.ecdf import CDF_FIELDS
from src.services.harness.exporter import DataExporter
from src.services.harness.montecarlo import (
    REJECTION_TIME_FIELDS,
    SWEEP_FIELDS,
    SWEEP_PARAMS,
    Method,
    RunSpec,
    simulate,
    sweep,
)
from src.services.harness.runner import default_grid_range, generate, run_cs, run_stream
from src.services.harness.sources import DgpName, LoggedStream, SourceSpec, StreamSource, file_source, synthetic_source
from src.services.inference.boundary import rho_for_target_time
from src.services.inference.confseq import DEFAULT_GRID_POINTS
from src.utils.errors import ConfigError
from src.utils.logging_config import setup_logging

logger = logging.getLogger(__name__)

REGRESSOR_CHOICES = [kind.value for kind in RegressorKind]


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("test configuration")
    group.add_argument("--config", type=Path, help="Flat JSON config file; flags override it")
    group.add_argument("--alpha", type=float)
    group.add_argument("--rho", type=float)
    group.add_argument("--t0", type=int)
    group.add_argument("--gamma", type=float)
    group.add_argument("--eps-scale", type=float)
    group.add_argument("--var-floor", type=float)
    group.add_argument("--var-ceiling", type=float)
    group.add_argument("--seed", type=int)
    group.add_argument("--regressor", choices=REGRESSOR_CHOICES, help="Regressor for tau (and default for all roles)")
    group.add_argument("--variance-regressor", choices=REGRESSOR_CHOICES)
    group.add_argument("--outcome-regressor", choices=REGRESSOR_CHOICES)
    group.add_argument("--knn-k", type=int)
    group.add_argument("--null", type=float, help="Constant null value (default 0.5 for CMF, 0 for CATE)")
    group.add_argument("--out", type=Path, default=None, help="Output directory")


def _add_source_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("synthetic stream")
    group.add_argument("--dgp", choices=[d.value for d in DgpName], default=DgpName.NULL.value)
    group.add_argument("--delta", type=float, help="Signal size (preset per shape when omitted)")
    group.add_argument("--conc", type=float, help="Beta concentration (preset per shape when omitted)")
    group.add_argument("--pi1", type=float, default=0.5, help="Treatment propensity for --dgp cate")
    group.add_argument("--dimension", type=int, default=10)


def _add_method_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--method", choices=[m.value for m in Method], default=Method.GAAVI.value)
    parser.add_argument("--bins", type=int, default=None, help="Bins for --method binned")
    parser.add_argument("--binning", choices=[b.value for b in BinningKind], default=BinningKind.CENTERED_NORM.value)


def _add_simulation_flags(parser: argparse.ArgumentParser) -> None:
    _add_config_flags(parser)
    _add_source_flags(parser)
    _add_method_flags(parser)
    parser.add_argument("--horizon", type=int, default=5000)
    parser.add_argument("--replicates", type=int, default=100)
    parser.add_argument("--grid-stride", type=int, default=None, help="Spacing of the CDF grid")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes (1 = serial)")
    parser.add_argument("--input", default=None, help="Logged stream CSV to bootstrap-resample instead of --dgp")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaavi",
        description="Anytime-valid sequential tests of global nulls on conditional means and treatment effects",
    )
    parser.add_argument("--log-level", default=None, help="Override GAAVI_LOG_LEVEL")
    parser.add_argument("--log-dir", default=None, help="Also log to a rotating file in this directory")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Test one stream file")
    run.add_argument("--input", required=True, help="Stream CSV path, or - for stdin")
    _add_config_flags(run)
    _add_method_flags(run)
    run.add_argument("--horizon", type=int, default=None, help="Stop after this many observations")
    run.add_argument("--stride", type=int, default=None, help="Keep every k-th step record")

    simulate_cmd = sub.add_parser("simulate", help="Monte Carlo rejection-time CDF")
    _add_simulation_flags(simulate_cmd)

    cs = sub.add_parser("cs", help="Grid confidence sequence over constant nulls")
    cs.add_argument("--input", default=None, help="Stream CSV path (synthetic stream when omitted)")
    _add_config_flags(cs)
    _add_source_flags(cs)
    cs.add_argument("--grid-lo", type=float, default=None)
    cs.add_argument("--grid-hi", type=float, default=None)
    cs.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS)
    cs.add_argument("--horizon", type=int, default=None, help="Observations to consume (5000 for synthetic streams)")
    cs.add_argument("--stride", type=int, default=None, help="Spacing of cs.csv rows")

    calibrate = sub.add_parser("calibrate-rho", help="rho that makes the boundary tightest at a target time")
    calibrate.add_argument("--t-star", type=float, required=True)
    calibrate.add_argument("--alpha", type=float, default=settings.default_alpha)

    sweep_cmd = sub.add_parser("sweep", help="Repeat simulate over values of one parameter")
    _add_simulation_flags(sweep_cmd)
    sweep_cmd.add_argument("--param", choices=list(SWEEP_PARAMS), required=True)
    sweep_cmd.add_argument("--values", required=True, help="Comma-separated values")

    gen = sub.add_parser("generate", help="Write a synthetic stream as CSV")
    _add_source_flags(gen)
    gen.add_argument("--n", type=int, required=True, help="Number of observations")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--output", default="-", help="Output path, or - for stdout")

    return parser


def _require(ok: bool, message: str, details: Optional[Dict[str, Any]] = None) -> None:
    if not ok:
        raise ConfigError(message, details)


def config_from_args(args: argparse.Namespace, default_t0: Optional[int] = None) -> TestConfig:
    """
    Config file values overridden by any flags given; `default_t0` fills t0
    when neither sets it
    """
    file_values = load_config_file(args.config) if args.config else {}
    overrides = {
        "alpha": args.alpha,
        "rho": args.rho,
        "t0": args.t0,
        "gamma": args.gamma,
        "eps_scale": args.eps_scale,
        "var_floor": args.var_floor,
        "var_ceiling": args.var_ceiling,
        "seed": args.seed,
        "regressor": args.regressor,
        "variance_regressor": args.variance_regressor,
        "outcome_regressor": args.outcome_regressor,
        "knn.k": args.knn_k,
    }
    values = merge_overrides(file_values, overrides)
    if default_t0 is not None:
        values.setdefault("t0", default_t0)
    return build_test_config(values)


def source_from_args(args: argparse.Namespace) -> SourceSpec:
    return SourceSpec(
        dgp=args.dgp,
        delta=args.delta,
        conc=args.conc,
        pi1=args.pi1,
        dimension=args.dimension,
    )


def _out_dir(args: argparse.Namespace) -> Path:
    return args.out if args.out is not None else Path(settings.output_dir)


def _open_input(path: str):
    if path == "-":
        return sys.stdin
    try:
        return open(path, encoding="utf-8", newline="")
    except OSError as e:
        raise ConfigError(f"cannot open input {path}: {e.strerror}", {"path": path})


def _load_logged(path: str) -> LoggedStream:
    handle = _open_input(path)
    try:
        return LoggedStream.from_source(file_source(handle))
    finally:
        if handle is not sys.stdin:
            handle.close()


def _run_spec(args: argparse.Namespace) -> RunSpec:
    """RunSpec for simulate and sweep; synthetic runs default t0 to the burn-in heuristic"""
    _require(args.workers is None or args.workers >= 1, "--workers must be >= 1", {"workers": args.workers})
    logged = _load_logged(args.input) if args.input is not None else None
    dimension = logged.dimension if logged is not None else args.dimension
    cfg = config_from_args(args, default_t0=default_burn_in(dimension))
    fields: Dict[str, Any] = {
        "method": args.method,
        "source": source_from_args(args),
        "horizon": args.horizon,
        "replicates": args.replicates,
        "cfg": cfg,
        "null_value": args.null,
        "binning": args.binning,
        "logged": logged,
    }
    if args.grid_stride is not None:
        fields["checkpoint_stride"] = args.grid_stride
    if args.bins is not None:
        fields["bins"] = args.bins
    return RunSpec(**fields)


def _parse_values(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"--values must be comma-separated numbers, got {text!r}")


def cmd_run(args: argparse.Namespace) -> Dict[str, Any]:
    cfg = config_from_args(args)
    handle = _open_input(args.input)
    try:
        return run_stream(
            file_source(handle),
            cfg,
            _out_dir(args),
            method=Method(args.method),
            null_value=args.null,
            horizon=args.horizon,
            record_stride=args.stride,
            bins=args.bins,
            binning=BinningKind(args.binning),
        )
    finally:
        if handle is not sys.stdin:
            handle.close()


def cmd_simulate(args: argparse.Namespace) -> Dict[str, Any]:
    spec = _run_spec(args)
    result = simulate(spec, args.workers)
    exporter = DataExporter()
    out_dir = _out_dir(args)
    exporter.write_csv(out_dir / "rejection_times.csv", result.rejection_rows, REJECTION_TIME_FIELDS)
    exporter.write_csv(out_dir / "cdf.csv", result.cdf.to_rows(), CDF_FIELDS)
    rejected = sum(t is not None for t in result.times)
    summary = {
        "method": spec.method.value,
        "source": spec.describe_source(),
        "horizon": spec.horizon,
        "replicates": spec.replicates,
        "null_value": spec.resolved_null,
        "rejected": rejected,
        "fraction_rejected": rejected / spec.replicates,
        "config": spec.cfg.model_dump(mode="json"),
    }
    exporter.write_json(out_dir / "summary.json", summary)
    return summary


def cmd_cs(args: argparse.Namespace) -> Dict[str, Any]:
    _require(args.grid_points >= 1, "--grid-points must be >= 1", {"grid_points": args.grid_points})
    common = dict(grid_lo=args.grid_lo, grid_hi=args.grid_hi, grid_points=args.grid_points, record_stride=args.stride)
    if args.input is None:
        cfg = config_from_args(args, default_t0=default_burn_in(args.dimension))
        source = synthetic_source(source_from_args(args), cfg.seed)
        horizon = args.horizon if args.horizon is not None else 5000
        _check_grid_range(args, cfg, source)
        return run_cs(source, cfg, _out_dir(args), horizon=horizon, **common)
    cfg = config_from_args(args)
    handle = _open_input(args.input)
    try:
        source = file_source(handle)
        _check_grid_range(args, cfg, source)
        return run_cs(source, cfg, _out_dir(args), horizon=args.horizon, **common)
    finally:
        if handle is not sys.stdin:
            handle.close()


def _check_grid_range(args: argparse.Namespace, cfg: TestConfig, source: StreamSource) -> None:
    default_lo, default_hi = default_grid_range(cfg, source.kind)
    lo = default_lo if args.grid_lo is None else args.grid_lo
    hi = default_hi if args.grid_hi is None else args.grid_hi
    _require(lo <= hi, "--grid-lo must not exceed --grid-hi", {"grid_lo": lo, "grid_hi": hi})


def cmd_calibrate_rho(args: argparse.Namespace) -> Dict[str, Any]:
    _require(0.0 < args.alpha < 0.5, "--alpha must lie in (0, 0.5) for rho tuning", {"alpha": args.alpha})
    _require(args.t_star >= 1, "--t-star must be >= 1", {"t_star": args.t_star})
    rho = rho_for_target_time(args.t_star, args.alpha)
    if abs(rho - settings.default_rho) > 0.1 * settings.default_rho:
        logger.info(f"rho={rho:.4f} for t_star={args.t_star:g}; the default rho={settings.default_rho} targets a different time")
    result = {"alpha": args.alpha, "t_star": args.t_star, "rho": rho}
    sys.stdout.write(json.dumps(result) + "\n")
    return result


def cmd_sweep(args: argparse.Namespace) -> Dict[str, Any]:
    spec = _run_spec(args)
    values = _parse_values(args.values)
    if not values:
        raise ConfigError("--values needs at least one value")
    rows = sweep(spec, args.param, values, args.workers)
    DataExporter().write_csv(_out_dir(args) / "sweep.csv", rows, SWEEP_FIELDS)
    return {"param": args.param, "values": values, "rows": len(rows)}


def cmd_generate(args: argparse.Namespace) -> Dict[str, Any]:
    _require(args.n >= 0, "--n must be >= 0", {"n": args.n})
    spec = source_from_args(args)
    if args.output == "-":
        count = generate(spec, args.n, args.seed, sys.stdout)
    else:
        path = Path(args.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            count = generate(spec, args.n, args.seed, handle)
    logger.info(f"Generated {count} {spec.dgp.value} observations")
    return {"rows": count}


COMMANDS = {
    "run": cmd_run,
    "simulate": cmd_simulate,
    "cs": cmd_cs,
    "calibrate-rho": cmd_calibrate_rho,
    "sweep": cmd_sweep,
    "generate": cmd_generate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run one subcommand and return its exit code"""
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level, args.log_dir)
    try:
        COMMANDS[args.command](args)
    except Exception as exc:
        return handle_exception(exc)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
