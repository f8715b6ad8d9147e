"""Exact verification of pinched projective lines over imperfect fields and their genus-one invariants."""

__version__ = "0.1.0"
