"""Exact rational literals.

Every number that crosses a file or CLI boundary is a rational literal:
an optional sign, an integer, and an optional ``/denominator``.  Floating
point is rejected outright so no rounding can leak into a decision path.
Internally all arithmetic uses ``fractions.Fraction``, which keeps values
normalized to lowest terms with a positive denominator.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ValidationError

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(value: int | str) -> Fraction:
    """Parse an exact rational from an int or a ``p`` / ``p/q`` string.

    Floats (and float-looking strings such as ``1.5`` or ``2e3``) are
    rejected with ValidationError.
    """
    if isinstance(value, bool):
        raise ValidationError(f"not a rational literal: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValidationError(
            f"floating-point literal {value!r} rejected: inputs must be exact rationals"
        )
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ValidationError(
                f"not a rational literal: {value!r} (expected 'p' or 'p/q')"
            )
        if "/" in text:
            num, den = text.split("/")
            if int(den) == 0:
                raise ValidationError(f"zero denominator in {value!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    raise ValidationError(f"not a rational literal: {value!r}")


def format_rational(value: Fraction) -> str:
    """Render a Fraction as a canonical ``p`` or ``p/q`` string."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational_vector(values) -> tuple[Fraction, ...]:
    return tuple(parse_rational(v) for v in values)


def format_rational_vector(values) -> list[str]:
    return [format_rational(v) for v in values]
