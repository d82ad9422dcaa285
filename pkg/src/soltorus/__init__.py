"""Exact computations for the solenoidal Lie algebra over a rational quantum torus."""

__version__ = "0.1.0"
