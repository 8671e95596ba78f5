"""Teichmüller polynomials of odd-block pseudo-Anosov maps."""

__version__ = "0.1.0"
