"""Relative root systems, Borel subsets and cores, and machine-checkable
strong-grading certificates, all in exact rational arithmetic."""

__version__ = "0.1.0"
