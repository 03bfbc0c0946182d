"""Cached factories for settings and per-prime contexts."""
from functools import lru_cache
import threading
from typing import Dict, Optional, Tuple

from onp.config.settings import Settings
from onp.arithmetic.context import Context

_contexts: Dict[Tuple[int, str], Context] = {}
_lock = threading.Lock()


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


def get_context(p: int, settings: Optional[Settings] = None) -> Context:
    """Return the shared Context for prime `p`, creating it on first use.

    Contexts are shared per (p, settings), so callers with different caps
    never see each other's memo tables.
    """
    settings = settings or get_settings()
    key = (p, settings.model_dump_json())
    with _lock:
        ctx = _contexts.get(key)
        if ctx is None:
            ctx = Context(p, settings=settings)
            _contexts[key] = ctx
        return ctx


def reset_contexts() -> None:
    """Drop every shared Context (fresh caches)."""
    with _lock:
        _contexts.clear()
