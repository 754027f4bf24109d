"""Exact computations for affine q-Schur algebras and periodic flag modules."""

__version__ = "0.1.0"
