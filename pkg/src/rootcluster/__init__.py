"""Certified clustering of complex polynomial roots by subdivision."""

__version__ = "0.1.0"
