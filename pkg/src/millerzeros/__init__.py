"""Zeros of Miller basis modular forms.

Exact Faber polynomials, certified root counts on the arc, grid arc bounds,
Szegő-type limit curves and CM zero checks.
"""

__version__ = "0.1.0"

__all__ = ["arcbound", "cm", "intpoly", "miller", "qseries", "report", "roots", "scan", "szego"]
