"""Shared number formatting.

Every file and table the toolkit emits goes through these two functions, so
a value can never round differently in two places.
"""

import math

from .errors import ValidationError


def fmt_shortest(value) -> str:
    """Shortest decimal text that round-trips the value exactly.

    Integers stay integers. Floats use repr(), normalised so the result is
    always re-readable as a float by a YAML 1.1 parser (a mantissa dot is
    forced when an exponent is present).
    """
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValidationError(f"non-finite number not representable: {value!r}")
        text = repr(value)
        if "e" in text and "." not in text.split("e", 1)[0]:
            mantissa, exponent = text.split("e", 1)
            text = f"{mantissa}.0e{exponent}"
        return text
    raise TypeError(f"not a formattable scalar: {value!r}")


def fmt_fixed(value, places: int) -> str:
    """Fixed-point rendering used by the human-readable tables."""
    if value is None:
        return "-"
    return f"{float(value):.{places}f}"
