"""Exact Dolbeault cohomology of deformed complex structures on even-rank
compact Lie groups."""

__version__ = "0.1.0"
