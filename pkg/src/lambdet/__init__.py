"""Exact lambda-determinant engine: ASMs, interlacing operators, Laurent
polynomials, the octahedral recurrence and its closed-form expansion."""

__version__ = "0.1.0"
