"""Exact computations on anisotropic Potts models."""

__version__ = "0.1.0"
