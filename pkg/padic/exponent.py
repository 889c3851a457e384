"""
Rational exponents with ±∞ sentinels.

Valuations, norm exponents and chordal exponents are exact
``Fraction`` values; the only non-Fraction values allowed are
``math.inf`` / ``-math.inf`` for v(0) = +∞ and |0| = p^(-∞).
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

from padic.errors import LiteralParseError

RationalExponent = Union[Fraction, float]

INF = math.inf
NEG_INF = -math.inf

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def is_infinite(x: RationalExponent) -> bool:
    return isinstance(x, float) and math.isinf(x)


def format_exponent(x: RationalExponent) -> str:
    if is_infinite(x):
        return "+inf" if x > 0 else "-inf"
    return str(Fraction(x))


def format_ratio(x: RationalExponent) -> str:
    """Always ``num/den`` (used in JSON), ±inf as for format_exponent."""
    if is_infinite(x):
        return format_exponent(x)
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_exponent(text: str) -> RationalExponent:
    t = text.strip().lower()
    if t in ("inf", "+inf"):
        return INF
    if t == "-inf":
        return NEG_INF
    m = _RATIONAL.match(t.strip("()"))
    if not m:
        raise LiteralParseError(f"Invalid rational exponent: '{text}'")
    num, den = m.groups()
    if den is not None and int(den) == 0:
        raise LiteralParseError(f"Zero denominator in exponent: '{text}'")
    return Fraction(int(num), int(den) if den else 1)


def power_literal(p: int, x: RationalExponent) -> str:
    """``p^t`` for an exponent t; p^(-inf) prints as 0."""
    if is_infinite(x):
        return "0" if x < 0 else "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return f"{p}^{x.numerator}"
    return f"{p}^({x.numerator}/{x.denominator})"
