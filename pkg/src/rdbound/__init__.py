"""Resolvent degree upper bounds for PSU(2,q) and PSU(3,q)."""

__version__ = "0.1.0"
