"""Certified dynamical degrees of monomial-linear birational maps of P^3."""

__version__ = "0.1.0"
