"""Exact rational values and their display rendering.

All tabulation arithmetic in this package is exact; binary floats are
refused at the boundary and decimal strings are produced by integer
arithmetic with round-half-up, so rendered output never drifts.
"""

from __future__ import annotations

from fractions import Fraction


def exact_rational(value, what: str) -> Fraction:
    """Convert to an exact Fraction, refusing binary floats outright.

    Accepts ints, Fractions, Decimals, and strings such as ``"0.35"``
    or ``"21738/62291"``.
    """
    if isinstance(value, float):
        raise ValueError(
            f"{what} must be exact (int, string, or Fraction), not a binary float"
        )
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"{what} is not a rational number: {value!r}") from exc


def bounded_rational(value, lo: Fraction, hi: Fraction, what: str) -> Fraction:
    value = exact_rational(value, what)
    if not lo <= value <= hi:
        raise ValueError(f"{what} must lie in [{lo}, {hi}], got {value}")
    return value


def decimal_string(value: Fraction, places: int) -> str:
    """Exact fixed-point rendering, round-half-up on the magnitude."""
    value = Fraction(value)
    sign = "-" if value < 0 else ""
    scaled = abs(value) * 10**places
    units, remainder = divmod(scaled.numerator, scaled.denominator)
    if 2 * remainder >= scaled.denominator:
        units += 1
    if places == 0:
        return f"{sign}{units}"
    digits = str(units).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def percent_string(share: Fraction, places: int = 2) -> str:
    """A proportion rendered as a percentage, e.g. ``51.46%``."""
    return decimal_string(Fraction(share) * 100, places) + "%"


def fraction_token(value: Fraction | int) -> str:
    """Machine rendering: plain integer, or ``numerator/denominator``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
