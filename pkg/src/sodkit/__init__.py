"""Exact Euler-form lattices, graded Hom calculus and Hochschild tables for glued categories."""

__version__ = "0.1.0"
