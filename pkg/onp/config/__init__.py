"""Configuration package."""
from onp.config.settings import Settings, settings

__all__ = ["Settings", "settings"]
