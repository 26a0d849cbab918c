"""Parsing and rendering of exact rationals.

All scalars in the package are :class:`fractions.Fraction`.  Files may spell
them as ``"p/q"`` strings, terminating decimals (``"0.18"``) or JSON numbers;
every form is converted without passing through binary floating point.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = ["Fraction", "parse_rational", "format_rational", "approx"]


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, _RationalABC):
        return Fraction(value)
    if isinstance(value, float):
        # json.loads should be called with parse_float=Fraction; a bare float
        # here means precision was already lost upstream.
        raise TypeError(f"refusing inexact float {value!r}; pass a string")
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_rational(x: Fraction) -> str:
    """Canonical ``"p/q"`` form, including integers (``"1/1"``)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def approx(x: Fraction, digits: int = 4) -> str:
    return f"~{float(x):.{digits}f}"
