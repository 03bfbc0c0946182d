"""Engine usage counters for verification reporting."""
from typing import Dict
import threading

_counters: Dict[str, int] = {
    "multiplications": 0,
    "monomial_cache_misses": 0,
    "power_tests": 0,
    "alpha_scans": 0,
    "alpha_cache_hits": 0,
}
_lock = threading.Lock()


def record(name: str, count: int = 1) -> None:
    with _lock:
        _counters[name] = _counters.get(name, 0) + count


def get_full_report() -> Dict[str, int]:
    """Return a snapshot of every counter."""
    with _lock:
        return dict(_counters)


def reset_report() -> None:
    """Zero all counters (for a fresh verification run)."""
    with _lock:
        for name in _counters:
            _counters[name] = 0


class UsageTracker:
    record = staticmethod(record)
    get_full_report = staticmethod(get_full_report)
    reset = staticmethod(reset_report)


usage_tracker = UsageTracker()
