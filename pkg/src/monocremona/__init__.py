"""Exact tools for monomial transformations of projective space."""

__version__ = "0.1.0"
