"""Canonical text forms for exact rationals."""

from __future__ import annotations

from fractions import Fraction

_INF = float("inf")


def frac_str(value: Fraction | int | float) -> str:
    """Render a rational as ``p/q`` (bare ``p`` when q == 1), or ``inf``."""
    if value == _INF:
        return "inf"
    return str(Fraction(value))


def parse_frac(text: str) -> Fraction:
    """Parse ``p/q``, integer, or decimal text into an exact Fraction."""
    if not isinstance(text, str):
        raise ValueError(f"expected rational text, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def approx(value: Fraction, digits: int = 6) -> str:
    """Short decimal approximation for human-facing output only."""
    return f"{float(value):.{digits}g}"
