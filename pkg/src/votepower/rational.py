"""Exact rational values.

Every power, weight, and efficacy score in this package is a
``fractions.Fraction``: arbitrary precision, always in lowest terms, exact
equality.  No floating point enters any computation; decimals appear only in
rendered output.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def format_fraction(value: Fraction) -> str:
    """Render ``value`` as ``p/q`` in lowest terms, or a bare integer."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    """Inverse of :func:`format_fraction` (also accepts any Fraction literal)."""
    return Fraction(text)


def decimal6(value: Fraction) -> float:
    """Six-significant-digit float for display; the fraction stays authoritative."""
    if value == 0:
        return 0.0
    return float(f"{float(value):.6g}")
