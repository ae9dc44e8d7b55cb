"""Exact computations with finite-dimensional left Leibniz algebras."""
__version__ = "0.1.0"
