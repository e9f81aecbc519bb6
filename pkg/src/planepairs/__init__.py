"""Exact computational commutative algebra for Hilbert schemes of pairs of linear spaces."""

__version__ = "0.1.0"
