"""Exact rational <-> ``"p/q"`` string conversion used by every report."""

from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction

from tiling.errors import FormatError


def fraction_str(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def fraction_list(values: Iterable[Fraction | int]) -> list[str]:
    return [fraction_str(v) for v in values]


def parse_fraction(text: str | int) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError, AttributeError) as exc:
        raise FormatError(f"not a rational number: {text!r}") from exc
