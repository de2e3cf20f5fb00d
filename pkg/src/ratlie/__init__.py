"""Exact computations with free graded Lie algebras, DGLAs and Sullivan algebras over Q."""

__version__ = "0.1.0"
