"""Exact lattice point counting in rational polytopes via signed cone decompositions."""

__version__ = "0.1.0"
