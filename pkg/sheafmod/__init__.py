"""Sheaves on finite locales, as modules, Hilbert modules and projection matrices."""

__version__ = "0.1.0"
