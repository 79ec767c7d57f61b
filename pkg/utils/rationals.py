"""
Точные рациональные значения: разбор и печать "p/q".
"""
from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str]


def parse_rational(text: RationalLike) -> Fraction:
    """Разобрать "1/2", "0.5", "1" или число в Fraction"""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"not an exact rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}") from exc


def format_rational(value: Fraction) -> str:
    """Печать без лишнего: 1, 0, 1/2"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_unit(text: RationalLike) -> Fraction:
    """Рациональное из [0, 1]"""
    value = parse_rational(text)
    if not 0 <= value <= 1:
        raise ValueError(f"value {format_rational(value)} outside [0, 1]")
    return value
