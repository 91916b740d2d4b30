"""Exact tools for integer matrices with bounded m x m minors."""

__version__ = "0.1.0"
