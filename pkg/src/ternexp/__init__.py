"""Bounded search and necessary-condition sieving for ``a**x + b**y = c**z``
with prime or coprime bases."""

__version__ = "0.1.0"
