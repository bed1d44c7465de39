"""
Harness Services
Stream I/O, Monte Carlo replication, CDF estimation and output
"""

from src.services.harness.ecdf import CDF_FIELDS, CdfRow, CdfTable, cdf_grid, ecdf, wilson
from src.services.harness.exporter import DataExporter
from src.services.harness.montecarlo import (
    REJECTION_TIME_FIELDS,
    SWEEP_FIELDS,
    SWEEP_PARAMS,
    Method,
    RunSpec,
    SimulationResult,
    default_null_value,
    run_replicate,
    simulate,
    sweep,
    with_param,
)
from src.services.harness.runner import CS_FIELDS, default_grid_range, generate, run_cs, run_stream
from src.services.harness.sources import (
    DgpName,
    LoggedStream,
    SourceSpec,
    StreamSource,
    bootstrap_source,
    file_source,
    synthetic_source,
)
from src.services.harness.stream_io import StreamReader, parse_header, parse_row, stream_header, write_stream

__all__ = [
    "CDF_FIELDS",
    "CdfRow",
    "CdfTable",
    "cdf_grid",
    "ecdf",
    "wilson",
    "DataExporter",
    "REJECTION_TIME_FIELDS",
    "SWEEP_FIELDS",
    "SWEEP_PARAMS",
    "Method",
    "RunSpec",
    "SimulationResult",
    "default_null_value",
    "run_replicate",
    "simulate",
    "sweep",
    "with_param",
    "CS_FIELDS",
    "default_grid_range",
    "generate",
    "run_cs",
    "run_stream",
    "DgpName",
    "LoggedStream",
    "SourceSpec",
    "StreamSource",
    "bootstrap_source",
    "file_source",
    "synthetic_source",
    "StreamReader",
    "parse_header",
    "parse_row",
    "stream_header",
    "write_stream",
]
