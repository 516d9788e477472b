"""Exact computations for the rational homology balls B_{p,q}."""

__version__ = "0.1.0"
