"""Poisson structures on triangular charts of Hilbert schemes of points."""

__version__ = "0.1.0"
