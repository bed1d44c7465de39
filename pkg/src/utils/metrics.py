"""
Run Metrics
In-memory counters and timings for simulation throughput
"""

import logging
import time
from collections import defaultdict
from typing import Dict, List, Optional

import numpy as np

logger = logging.getLogger(__name__)

_MAX_TIMINGS = 10000


class MetricsCollector:
    """Counters and wall-clock timings keyed by name plus optional tags"""

    def __init__(self):
        self._counters: Dict[str, int] = defaultdict(int)
        self._timers: Dict[str, List[float]] = defaultdict(list)

    def increment(self, metric_name: str, value: int = 1, tags: Optional[Dict[str, str]] = None) -> None:
        key = self._build_key(metric_name, tags)
        self._counters[key] += value

    def record_timing(self, metric_name: str, duration: float, tags: Optional[Dict[str, str]] = None) -> None:
        """
        Record a duration in seconds

        Only the most recent timings per key are kept.
        """
        key = self._build_key(metric_name, tags)
        self._timers[key].append(duration)
        if len(self._timers[key]) > _MAX_TIMINGS:
            self._timers[key] = self._timers[key][-_MAX_TIMINGS:]
        logger.debug(f"Timing recorded: {key} = {duration:.3f}s")

    def get_counter(self, metric_name: str, tags: Optional[Dict[str, str]] = None) -> int:
        return self._counters.get(self._build_key(metric_name, tags), 0)

    def get_timing_stats(self, metric_name: str, tags: Optional[Dict[str, str]] = None) -> Dict[str, float]:
        timings = self._timers.get(self._build_key(metric_name, tags), [])
        if not timings:
            return {"count": 0, "total": 0.0, "mean": 0.0, "p50": 0.0, "p95": 0.0}
        arr = np.asarray(timings)
        return {
            "count": int(arr.size),
            "total": float(arr.sum()),
            "mean": float(arr.mean()),
            "p50": float(np.quantile(arr, 0.5)),
            "p95": float(np.quantile(arr, 0.95)),
        }

    def summary(self) -> Dict:
        return {
            "counters": dict(self._counters),
            "timings": {key: self._stats_for_key(key) for key in self._timers},
        }

    def _stats_for_key(self, key: str) -> Dict[str, float]:
        name, _, tag_str = key.partition(":")
        tags = dict(part.split("=", 1) for part in tag_str.split(":")) if tag_str else None
        return self.get_timing_stats(name, tags)

    def _build_key(self, metric_name: str, tags: Optional[Dict[str, str]] = None) -> str:
        if not tags:
            return metric_name
        tag_str = ":".join([f"{k}={v}" for k, v in sorted(tags.items())])
        return f"{metric_name}:{tag_str}"

    def reset(self) -> None:
        self._counters.clear()
        self._timers.clear()


_metrics = MetricsCollector()


def get_metrics() -> MetricsCollector:
    return _metrics


class TimingContext:
    """Times a block into `collector` (the process-wide one by default)"""

    def __init__(
        self,
        metric_name: str,
        tags: Optional[Dict[str, str]] = None,
        collector: Optional[MetricsCollector] = None,
    ):
        self.metric_name = metric_name
        self.tags = tags
        self.collector = collector or _metrics
        self.start_time: Optional[float] = None
        self.duration: Optional[float] = None

    def __enter__(self):
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.duration = time.perf_counter() - self.start_time
        self.collector.record_timing(self.metric_name, self.duration, self.tags)
        return False
