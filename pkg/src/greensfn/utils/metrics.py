"""Run-wide solver counters, summaries and timings.

Funnel members solve on worker threads, so every mutation goes through one lock.
"""
import threading
import time
from typing import Any, Dict, Optional

from greensfn.utils.logger import setup_logger

logger = setup_logger(__name__)


class MetricsManager:
    """Singleton registry shared by all solvers in a process."""
    _instance: Optional["MetricsManager"] = None
    _initialized: bool = False

    def __new__(cls) -> "MetricsManager":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self) -> None:
        if not self._initialized:
            self._metrics: Dict[str, Any] = {}
            self._lock = threading.Lock()
            self._initialized = True

    def increment(self, name: str, value: int = 1) -> None:
        with self._lock:
            self._metrics[name] = self._metrics.get(name, 0) + value

    def record(self, name: str, value: Any) -> None:
        """Keep only the latest value."""
        with self._lock:
            self._metrics[name] = value

    def observe(self, name: str, value: float) -> None:
        """Fold one sample into a count/total/min/max/last summary."""
        value = float(value)
        with self._lock:
            summary = self._metrics.get(name)
            if not isinstance(summary, dict):
                summary = {"count": 0, "total": 0.0, "min": value, "max": value}
                self._metrics[name] = summary
            summary["count"] += 1
            summary["total"] += value
            summary["min"] = min(summary["min"], value)
            summary["max"] = max(summary["max"], value)
            summary["last"] = value

    def get(self, name: str) -> Any:
        with self._lock:
            return self._metrics.get(name)

    def export(self) -> Dict[str, Any]:
        """Detached copy of the registry, summaries included."""
        with self._lock:
            snapshot = {k: dict(v) if isinstance(v, dict) else v for k, v in self._metrics.items()}
        logger.debug("Exporting metrics", extra={"metric_count": len(snapshot)})
        return snapshot

    def clear(self) -> None:
        with self._lock:
            self._metrics.clear()


class Timer:
    """Times a block and observes the duration under ``timer_<name>``."""

    def __init__(self, name: str):
        self.name = name
        self.start_time: Optional[float] = None
        self.metrics = MetricsManager()

    def __enter__(self) -> "Timer":
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        if self.start_time is None:
            logger.error("Timer exited without being entered", extra={"timer": self.name})
            return
        elapsed = time.perf_counter() - self.start_time
        self.metrics.observe(f"timer_{self.name}", elapsed)
        logger.debug("Timer finished", extra={"timer": self.name, "duration": elapsed, "failed": exc_type is not None})


metrics = MetricsManager()
