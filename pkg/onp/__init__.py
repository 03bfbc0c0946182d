"""OnP - exact arithmetic in the ordinal fields On_p below the first transcendental."""

__version__ = "0.1.0"
