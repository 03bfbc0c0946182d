"""Per-prime workspace holding p and the memoized structure data."""
from __future__ import annotations

import logging
import threading
from typing import Dict, Optional, Tuple, TYPE_CHECKING

from sympy import isprime

from onp.config.settings import Settings, settings as default_settings
from onp.core.errors import MalformedInputError
from onp.ordinals.element import Element, GeneratorId, Monomial

if TYPE_CHECKING:
    from onp.structure.alpha import AlphaRecord

logger = logging.getLogger(__name__)


class Context:
    """Field context for On_p.

    Caches only grow. Reads are lock-free dictionary lookups; every write goes
    through `remember`, which holds a re-entrant lock so that concurrent
    readers of the same Context never observe a half-built record.
    """

    def __init__(self, p: int, settings: Optional[Settings] = None):
        """Initialize a context.

        Args:
            p: Field characteristic; must be prime.
            settings: Caps and limits. If None, uses the global settings.
        """
        if not isinstance(p, int) or not isprime(p):
            raise MalformedInputError(f"characteristic must be a prime, got {p!r}")
        self.p = p
        self.settings = settings or default_settings
        self.alpha_cache: Dict[int, "AlphaRecord"] = {}
        self.chi_cache: Dict[int, Tuple[Element, Tuple[int, ...]]] = {}
        self.degree_cache: Dict[Element, int] = {}
        self.generator_power_cache: Dict[GeneratorId, Element] = {}
        self.monomial_cache: Dict[Tuple[Monomial, Monomial], Dict[Monomial, int]] = {}
        self.lock = threading.RLock()

    def remember(self, cache: dict, key, value):
        """Insert into `cache` unless present; returns the stored value."""
        with self.lock:
            return cache.setdefault(key, value)

    def __repr__(self) -> str:
        return f"Context(p={self.p}, alphas={sorted(self.alpha_cache)})"
