"""Periodic pseudo-differential operators as truncated infinite matrices."""

__version__ = "0.1.0"
