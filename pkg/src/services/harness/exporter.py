"""
Data Exporter
Deterministic CSV and JSON output for run results
"""

import csv
import json
import logging
import math
from io import StringIO
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from src.config.settings import settings

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class DataExporter:
    """
    Rows of dicts to CSV text and plain data to JSON text.

    None becomes an empty CSV field (an unset rejection time stays distinct
    from any number); floats use `float_format`.
    """

    def __init__(self, float_format: Optional[str] = None):
        self.float_format = float_format or settings.csv_float_format

    def format_value(self, value: Any) -> str:
        if value is None:
            return ""
        if isinstance(value, (bool, np.bool_)):
            return "true" if value else "false"
        if isinstance(value, (int, np.integer)):
            return str(int(value))
        if isinstance(value, (float, np.floating)):
            value = float(value)
            if math.isnan(value):
                return "nan"
            if math.isinf(value):
                return "inf" if value > 0 else "-inf"
            return format(value, self.float_format)
        if isinstance(value, (dict, list)):
            return json.dumps(value)
        return str(value)

    def to_csv(self, data: List[Dict[str, Any]], fieldnames: Optional[List[str]] = None) -> str:
        """
        Args:
            data: Rows to export
            fieldnames: Column order (keys of the first row when omitted)

        Returns:
            CSV text with LF line endings; header only when `data` is empty
            and fieldnames are given
        """
        if not fieldnames:
            if not data:
                return ""
            fieldnames = list(data[0].keys())

        output = StringIO()
        writer = csv.DictWriter(output, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in data:
            writer.writerow({key: self.format_value(row.get(key)) for key in fieldnames})
        return output.getvalue()

    @staticmethod
    def to_json(data: Any, indent: int = 2) -> str:
        def json_serializer(obj):
            if isinstance(obj, np.integer):
                return int(obj)
            if isinstance(obj, np.floating):
                return float(obj)
            if isinstance(obj, np.ndarray):
                return obj.tolist()
            if isinstance(obj, Path):
                return str(obj)
            raise TypeError(f"Type {type(obj)} not serializable")

        return json.dumps(data, indent=indent, default=json_serializer, sort_keys=True) + "\n"

    def write_csv(self, path: PathLike, data: List[Dict[str, Any]], fieldnames: Optional[List[str]] = None) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_csv(data, fieldnames), encoding="utf-8", newline="")
        logger.info(f"Wrote {len(data)} rows to {path}")
        return path

    def write_json(self, path: PathLike, data: Any) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json(data), encoding="utf-8", newline="")
        logger.info(f"Wrote {path}")
        return path
