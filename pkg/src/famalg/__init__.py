"""Exact-arithmetic algebras from subspace families."""

__version__ = "0.1.0"
