"""Exact enumeration of stamp foldings, semi-meanders, meanders and their shapes."""

__version__ = "0.1.0"
