"""Finite-depth arboreal Galois data for unicritical PCF polynomials."""

__version__ = "0.1.0"
