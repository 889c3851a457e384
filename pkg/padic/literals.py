"""
Element literals
================
Grammar used by the CLI and by test fixtures:

    p^<q> * [d_0, d_1, ...]

``<q>`` is the π-index of d_0 divided by e, written ``3`` or ``(1/2)``.
Digits are integers in [0, p) when f = 1 and ``(c0,c1,...)`` tuples
when f > 1.  ``0`` denotes the zero element.  The parser also accepts a
plain rational such as ``5`` or ``-1/2``.

    Q_2(√2):   2^(1/2) * [1, 0, 1]      = π + π^3

A digit literal is the exact finite sum, carried to the same relative
precision as a parsed rational (at least up to its last digit).
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Sequence

from padic.element import DigitExpansion, PAdicElement, digits, from_digits, from_rational, zero
from padic.errors import LiteralParseError
from padic.extension import ExtensionSpec

_LITERAL = re.compile(
    r"^\s*(\d+)\s*\^\s*(\(\s*[+-]?\d+\s*(?:/\s*\d+\s*)?\)|[+-]?\d+)\s*\*\s*\[(.*)\]\s*$"
)
_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$")
_TUPLE = re.compile(r"\(([^()]*)\)")


def format_element(x: PAdicElement) -> str:
    if x.is_zero:
        return "0"
    dx = digits(x, x.val_index(), None)
    return format_expansion(dx)


def format_expansion(dx: DigitExpansion) -> str:
    if dx.is_zero():
        return "0"
    spec = dx.spec
    q = Fraction(dx.lo, spec.e)
    if q.denominator == 1:
        head = f"{spec.p}^{q.numerator}"
    else:
        head = f"{spec.p}^({q.numerator}/{q.denominator})"
    return f"{head} * [" + ", ".join(str(d) for d in dx.digits) + "]"


def parse_element(spec: ExtensionSpec, text: str) -> PAdicElement:
    m = _RATIONAL.match(text)
    if m:
        num, den = m.groups()
        den = int(den) if den is not None else 1
        if den == 0:
            raise LiteralParseError(f"Zero denominator in element literal: '{text}'")
        return from_rational(spec, int(num), den)

    m = _LITERAL.match(text)
    if not m:
        raise LiteralParseError(
            f"Invalid element literal: '{text}'. Expected format like '2^(1/2) * [1, 0, 1]'"
        )
    base, exponent, body = m.groups()
    if int(base) != spec.p:
        raise LiteralParseError(f"Literal base {base} does not match p = {spec.p}: '{text}'")
    q = Fraction(exponent.strip("() ").replace(" ", ""))
    index = q * spec.e
    if index.denominator != 1:
        raise LiteralParseError(
            f"Exponent {q} is not in (1/{spec.e})Z: '{text}'"
        )

    field = spec.residue_field
    if spec.f == 1:
        tokens = [t.strip() for t in body.split(",") if t.strip()]
        rows = [[_int(t, text)] for t in tokens]
    else:
        rows = [[_int(c.strip(), text) for c in grp.split(",")] for grp in _TUPLE.findall(body)]
        if _TUPLE.sub("", body).replace(",", "").strip():
            raise LiteralParseError(f"Stray text between digit tuples: '{text}'")
    try:
        word = tuple(field.element(row) for row in rows)
    except ValueError as exc:
        raise LiteralParseError(f"Invalid digit in '{text}': {exc}") from exc
    if not word:
        return zero(spec)
    if word[0].is_zero():
        raise LiteralParseError(f"Leading digit must be nonzero: '{text}'")
    dx = DigitExpansion(spec, int(index), word)
    # the literal is the finite sum itself; absent digits past the last one are zero
    return from_digits(dx)._relift(max(dx.hi, dx.lo + spec.relative_cap))


def parse_keyed(text: str, keys: Sequence[str]) -> Dict[str, str]:
    """Split ``k1=<v1>,k2=<v2>`` where values may themselves contain commas.

    Only the names in ``keys`` start a new field; unknown or repeated
    names are rejected.
    """
    pattern = re.compile(r"(?:^|,)\s*(" + "|".join(map(re.escape, keys)) + r")\s*=")
    hits = list(pattern.finditer(text))
    if not hits or hits[0].start() != 0:
        raise LiteralParseError(
            f"Expected fields {', '.join(keys)} as key=value pairs: '{text}'"
        )
    out: Dict[str, str] = {}
    for i, hit in enumerate(hits):
        end = hits[i + 1].start() if i + 1 < len(hits) else len(text)
        key = hit.group(1)
        if key in out:
            raise LiteralParseError(f"Field '{key}' given twice: '{text}'")
        out[key] = text[hit.end():end].strip()
    return out


def _int(token: str, text: str) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise LiteralParseError(f"Invalid digit '{token}' in '{text}'") from exc
